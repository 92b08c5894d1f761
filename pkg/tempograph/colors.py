"""
Tempograph (c) 2026 The Tempograph Authors

SPDX-License-Identifier: MIT
"""

# Colors

FMT_RED = "\033[31m"
FMT_ORANGE = "\033[33m"
FMT_GRAY = "\033[37m"
FMT_CYAN = "\033[36m"
FMT_GREEN = "\033[32m"
FMT_MAGENTA = "\033[35m"
FMT_BLUE = "\033[34m"
FMT_YELLOW = "\033[93m"

FMT_BOLD = "\033[1m"
FMT_NONE = "\033[0m"
FMT_UNDERLINE = "\033[4m"

FMT_ERROR = FMT_RED + FMT_BOLD
FMT_SUCCESS = FMT_GREEN + FMT_BOLD

# one colour per subsystem, used as log prefixes and in exception messages
FMT_GRAPH = FMT_CYAN + FMT_BOLD
FMT_PARSE = FMT_CYAN + FMT_BOLD
FMT_EMBED = FMT_BLUE + FMT_BOLD
FMT_ORACLE = FMT_YELLOW + FMT_BOLD
FMT_EVOLVE = FMT_MAGENTA + FMT_BOLD
FMT_REASON = FMT_GREEN + FMT_BOLD
FMT_EVAL = FMT_ORANGE + FMT_BOLD
FMT_WORLD = FMT_GRAY + FMT_BOLD

SUBSYSTEM_FORMATS = {
    "graph": ("GRAPH", FMT_GRAPH),
    "embed": ("EMBED", FMT_EMBED),
    "oracle": ("ORACLE", FMT_ORACLE),
    "remote": ("ORACLE", FMT_ORACLE),
    "evolve": ("EVOLVE", FMT_EVOLVE),
    "reason": ("REASON", FMT_REASON),
    "eval": ("EVAL", FMT_EVAL),
    "fixtures": ("WORLD", FMT_WORLD),
}
"""
Maps the second component of a logger name (``tempograph.<subsystem>.x``) to
the tag and colour used when printing its records.
"""
