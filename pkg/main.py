#!/usr/bin/env python3
"""
Bicirculant Atlas
Command-line entry point for the census of connected 2-arc-transitive bicirculants.
"""

from src.cli import main

if __name__ == "__main__":
    main()
