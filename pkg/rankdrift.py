#!/usr/bin/env python3
"""Entry script, run from the repository root:

    python rankdrift.py ns --manifest data/f1/2012/season.json --entity constructors --method m1
"""
from cli_report import cli

if __name__ == "__main__":
    cli(prog_name="rankdrift")
