from Discrepz.cli.main import main, build_parser
