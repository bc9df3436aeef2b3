"""
Commands package - implementasi subcommand CLI

Setiap subcommand menerima ExperimentConfig yang sudah tervalidasi dan
folder output, lalu mengembalikan exit status.

Import:
    from proxpoint.commands import cmd_run

    status = cmd_run(config, Path("results/run"))
"""

from .estimate import cmd_estimate
from .run import cmd_run
from .verify import cmd_verify

__all__ = ["cmd_run", "cmd_estimate", "cmd_verify"]
