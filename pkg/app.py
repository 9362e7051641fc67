#!/usr/bin/env python3
"""
entropyflow
命令列應用程式入口
"""

from src.cli import main

if __name__ == "__main__":
    main()
