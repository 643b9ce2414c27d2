from revlatch.cli.commands import *
from revlatch.cli.main import build_parser, main, run
