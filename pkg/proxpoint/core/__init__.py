"""
Core package untuk konfigurasi dan exception aplikasi
"""
# Config dapat di-import langsung dari config.py
# Contoh: from proxpoint.core.config import get_settings
