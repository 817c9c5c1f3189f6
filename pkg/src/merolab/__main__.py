"""Allow running merolab as a module: python -m merolab"""

from .cli.main import cli

if __name__ == '__main__':
    cli()
