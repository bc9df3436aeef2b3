"""
PROXPOINT - toolkit proximal point untuk operator monoton maksimal.

Paket utama:
- core: konfigurasi dan exception
- schemas: encoding JSON (pydantic)
- services: logic numerik (set, operator, regularity, algoritma)
- commands: subcommand CLI run / estimate / verify
"""

__version__ = "1.0.0"
