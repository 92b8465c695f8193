import textwrap

from .commands import PROG_NAME, Command, commands, load_internal_commands
from freecomp import VERSION


class Help(Command):
    """ Display the list of available commands """

    template = textwrap.dedent("""\
        usage: {prog_name} <command> [--config FILE] [--json] [...]

        freecomp {version}: exact and numerical checks for free compression

        {command_list}

        Measures are YAML files (see data/measures), experiments are INI
        files (see data/experiments). Exit status is 1 when a check fails.
        Use '{prog_name} <command> --help' for the options of one command.
    """)

    def run(self, args):
        load_internal_commands()

        width = max(map(len, commands)) + 2
        lines = []
        for name in sorted(commands):
            summary, _, _ = (commands[name].__doc__ or "").strip().partition("\n")
            lines.append(f"    {name:<{width}}{summary}")

        print(Help.template.format(  # noqa: T201
            prog_name=PROG_NAME,
            version=VERSION,
            command_list="\n".join(lines),
        ))
        return 0
