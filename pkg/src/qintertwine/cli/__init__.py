"""Command-line front end: expression parser, configuration and commands."""

from .config import ConfigError, RunConfig, parse_caps, parse_q
from .main import SCHEMA_VERSION, build_parser, main, normalize_expression
from .parser import ParseError, evaluate, needs_kernel, parse, tokenize

__all__ = ["main", "build_parser", "normalize_expression", "SCHEMA_VERSION", "RunConfig",
           "ConfigError", "parse_caps", "parse_q", "ParseError", "parse", "tokenize", "evaluate",
           "needs_kernel"]
