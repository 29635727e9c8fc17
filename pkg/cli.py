#!/usr/bin/env python3
"""Entry point for caplab CLI"""

if __name__ == '__main__':
    from caplab_cli.main import cli
    cli()
