from src.cli.commands import COMMANDS, parse_point, run
from src.cli.models import RunConfig

__all__ = ["COMMANDS", "RunConfig", "parse_point", "run"]
