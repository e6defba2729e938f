import argparse
import sys
from pathlib import Path
from typing import List, Optional

# Import configuration and modules
from config import Config
from cli.commands import COMMANDS, CommandOptions, execute_command
from cli.parser import parse_problem
from cli.render import render_json, render_text
from utils.exceptions import exit_code_for, handle_exception
from utils.logger import get_logger, set_level

# Initialize logger
logger = get_logger(__name__)


class CoprimeApp:
    def __init__(self, stdout=None, stderr=None) -> None:
        """Initialize the command-line application with its output streams."""
        self.stdout = stdout or sys.stdout
        self.stderr = stderr or sys.stderr
        self.parser = self.build_parser()

    @staticmethod
    def build_parser() -> argparse.ArgumentParser:
        parser = argparse.ArgumentParser(
            prog="coprime",
            description="Coprimary filtrations of finitely generated modules",
        )
        parser.add_argument("command", choices=COMMANDS)
        parser.add_argument("file", help="problem file (.cpf)")
        parser.add_argument("--order", help='"canonical" or "(g), (g), ..." in ascending order')
        parser.add_argument("--json", action="store_true", help="print the canonical JSON report")
        parser.add_argument("--seed", type=int, help="seed for permutation-stability checks")
        parser.add_argument("--max-extensions", type=int, help="cap on enumerated linear extensions")
        parser.add_argument("--prefix", type=int, help="number of omega chain terms")
        parser.add_argument("--module", help="module name when the file declares several")
        parser.add_argument("--index", type=int, help="swap position (0-based)")
        parser.add_argument("--log-level", type=str.upper, choices=["DEBUG", "INFO", "WARNING", "ERROR"],
                            help="console log level")
        return parser

    def read_problem_text(self, path: str) -> str:
        """
        Read a problem file as UTF-8.

        Args:
            path: Path to the .cpf file

        Returns:
            File contents
        """
        return Path(path).read_text(encoding="utf-8")

    def emit_error(self, error: Exception) -> int:
        """Write the JSON error object to stderr and return the exit code"""
        error_dict = handle_exception(error, logger, reported=True)
        code = exit_code_for(error)
        error_dict['exit_code'] = code
        self.stderr.write(render_json({'error': error_dict}))
        return code

    def run(self, argv: Optional[List[str]] = None) -> int:
        args = self.parser.parse_args(argv)
        if args.log_level:
            set_level(args.log_level)

        options = CommandOptions(
            order=args.order,
            seed=args.seed,
            max_extensions=args.max_extensions,
            prefix=args.prefix,
            module=args.module,
            index=args.index,
        )

        try:
            text = self.read_problem_text(args.file)
        except (OSError, UnicodeDecodeError) as e:
            return self.emit_error(e)

        try:
            problem = parse_problem(text)
            result = execute_command(problem, args.command, options)
        except Exception as e:
            return self.emit_error(e)

        output = render_json(result.payload) if args.json else render_text(result.payload)
        self.stdout.write(output)
        logger.debug(f"{args.command} finished with exit code {result.exit_code}")
        return result.exit_code


def main(argv: Optional[List[str]] = None) -> int:
    Config.validate()
    app = CoprimeApp()
    return app.run(argv)


if __name__ == "__main__":
    sys.exit(main())
