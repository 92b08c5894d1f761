"""
Tempograph (c) 2026 The Tempograph Authors

SPDX-License-Identifier: MIT

This file holds the logic for starting tempograph from the CLI
"""
from tempograph.tempograph_main import main

main()
