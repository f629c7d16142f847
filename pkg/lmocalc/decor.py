#!/usr/bin/python3
#
# Console output: rich when available, plain print otherwise.

import logging
import sys

try:
    from rich.console import Console
    from rich.logging import RichHandler
    from rich.markup import escape
    from rich.table import Table

    console = Console(soft_wrap=True, highlight=False)
    err_console = Console(stderr=True, soft_wrap=True, highlight=False)
    _rich = True
except ModuleNotFoundError:
    _rich = False

display_color = True

# rich styles for check reports
COLORS = {'pass': 'green',
          'fail': 'red',
          'skip': 'yellow',
          'default': 'white'}


def color_string(string, color=None):
    if not (_rich and display_color) or color not in COLORS:
        return string
    return '[{0}]{1}[/{0}]'.format(COLORS[color], string)


def out(text=''):
    if _rich:
        console.print(text, markup=False)
    else:
        print(text)


def err(text):
    if _rich:
        err_console.print(text, markup=False)
    else:
        print(text, file=sys.stderr)


def hbar(tl):
    if tl == 1:
        return '┄'
    if tl == 2:
        return '┄┄'
    if tl == 3:
        return '┄┉┄'
    return '┄┉' + '━' * (tl - 4) + '┉┄'


def hbar_under(text):
    if not text:
        return
    out(text)
    out(hbar(len(text)))


def setup_logging(verbose=False):
    level = logging.DEBUG if verbose else logging.WARNING
    if _rich:
        handler = RichHandler(console=err_console, show_time=False, show_path=verbose)
        fmt = '%(message)s'
    else:
        handler = logging.StreamHandler()
        fmt = '%(levelname)s %(name)s: %(message)s'
    logging.basicConfig(level=level, format=fmt, handlers=[handler], force=True)


def report(title, results):
    """Print (name, ok, detail) rows; returns the number of failures."""
    failed = sum(1 for r in results if not r.ok)
    if _rich:
        table = Table(title=title, title_justify='left')
        table.add_column('check')
        table.add_column('result')
        table.add_column('detail')
        for r in results:
            status = color_string('pass', 'pass') if r.ok else color_string('FAIL', 'fail')
            table.add_row(escape(r.name), status, escape(r.detail or ''))
        console.print(table)
    else:
        hbar_under(title)
        for r in results:
            print('{0:<40} {1:<5} {2}'.format(r.name, 'pass' if r.ok else 'FAIL', r.detail or ''))
    out('{0}: {1} passed, {2} failed'.format(title, len(results) - failed, failed))
    return failed
