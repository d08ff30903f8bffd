"""
Command Factory Module

Creates the command object for a subcommand name. Each command reads its
inputs from a Manifest and fills a Report with results and verdicts.
"""

from commands.bar_exactness import BarExactnessCommand
from commands.base import BaseCommand, Manifest
from commands.cohomology import CohomologyCommand
from commands.corpus import CorpusCommand
from commands.deligne_classes import DeligneCommand
from commands.em_homology import EmHomologyCommand
from commands.join_model import JoinModelCommand
from commands.report import Report, Verdict
from commands.tower import TowerCommand
from commands.weil_kostant import WeilKostantCommand

COMMANDS = {
    command.name: command
    for command in (
        CohomologyCommand,
        EmHomologyCommand,
        JoinModelCommand,
        BarExactnessCommand,
        DeligneCommand,
        WeilKostantCommand,
        TowerCommand,
        CorpusCommand,
    )
}


def create_command(name, settings):
    """
    Factory function to create the command for a subcommand name.

    Args:
        name (str): One of the keys of COMMANDS.
        settings (dict): Configuration from load_configuration.

    Returns:
        BaseCommand: Command ready to execute a Manifest.

    Raises:
        ValueError: If the name is unknown.
    """
    try:
        command_cls = COMMANDS[name]
    except KeyError:
        raise ValueError(f"Unknown command: {name!r}; expected one of {', '.join(COMMANDS)}") from None
    return command_cls(settings)


def run(manifest, settings):
    """Dispatch a manifest to its command and return the Report"""
    return create_command(manifest.command, settings).execute(manifest)


def corpus_run(seed, settings):
    """The acceptance suite for a seed"""
    return run(Manifest(command=CorpusCommand.name, seed=seed), settings)
