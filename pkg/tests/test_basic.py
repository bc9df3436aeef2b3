"""
Basic Tests untuk PROXPOINT
Smoke tests untuk memastikan paket bisa di-import dan CLI bisa di-parse.
"""

import pytest

from proxpoint import __version__
from proxpoint.main import build_parser


class TestImports:
    """Test semua paket dapat di-import"""

    def test_import_services(self):
        """Test semua service dapat di-import"""
        from proxpoint.services import algorithms, hilbert, linalg, operators, regularity, sets, verification
        assert algorithms is not None
        assert hilbert is not None
        assert linalg is not None
        assert operators is not None
        assert regularity is not None
        assert sets is not None
        assert verification is not None

    def test_import_schemas(self):
        """Test semua schema dapat di-import"""
        from proxpoint.schemas import ExperimentConfig, OperatorSchema, SetSchema
        assert ExperimentConfig is not None
        assert OperatorSchema is not None
        assert SetSchema is not None

    def test_import_commands(self):
        """Test semua subcommand dapat di-import"""
        from proxpoint.commands import cmd_estimate, cmd_run, cmd_verify
        assert callable(cmd_run)
        assert callable(cmd_estimate)
        assert callable(cmd_verify)

    def test_version(self):
        """Test versi terdefinisi"""
        assert isinstance(__version__, str) and __version__


class TestSettings:
    """Test default Settings"""

    def test_defaults(self):
        """Test nilai default toleransi"""
        from proxpoint.core.config import Settings
        settings = Settings()
        assert settings.default_max_iters == 1000
        assert settings.default_residual_tol == 1e-10
        assert settings.dykstra_max_sweeps == 10000
        assert settings.dykstra_tolerance == 1e-12

    def test_env_override(self, monkeypatch):
        """Test override lewat environment variable"""
        from proxpoint.core.config import Settings
        monkeypatch.setenv("PROXPOINT_MIN_TRIALS_PER_STEP", "50")
        assert Settings().min_trials_per_step == 50


class TestParser:
    """Test parser CLI"""

    @pytest.mark.parametrize("command", ["run", "estimate", "verify"])
    def test_subcommands(self, command):
        """Test setiap subcommand menerima flag standar"""
        args = build_parser().parse_args([command, "--config", "c.json", "--seed", "3", "--iters", "10"])
        assert args.command == command
        assert args.seed == 3
        assert args.iters == 10

    def test_config_required(self):
        """Test --config wajib"""
        with pytest.raises(SystemExit):
            build_parser().parse_args(["run"])
