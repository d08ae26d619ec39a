#!/usr/bin/env python3
"""
Main entry point for curvalpha
"""

from curvalpha.cli import main

if __name__ == "__main__":
    main()
