"""CLI subcommands"""

from .derive import cmd_derive
from .simulate import cmd_simulate
from .sweep import cmd_sweep
from .verify import cmd_verify

__all__ = ["cmd_derive", "cmd_simulate", "cmd_sweep", "cmd_verify"]
