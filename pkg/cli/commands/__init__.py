from cli.commands.compare import compare
from cli.commands.config import config_app
from cli.commands.fit import fit_command
from cli.commands.simulate import simulate
from cli.commands.sweep import sweep

__all__ = ["compare", "config_app", "fit_command", "simulate", "sweep"]
