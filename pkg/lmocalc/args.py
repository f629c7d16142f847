#!/usr/bin/python3
# argparse with one handler per subcommand

import argparse


class ComplicatedArgs(object):
    def __init__(self, prog=None, description=None):
        self._parser = argparse.ArgumentParser(prog=prog, description=description)
        self._subparsers = None
        self._commands = {}
        self._handlers = {}
        self._extra = {}    # copied onto the namespace before dispatch

    def parser(self):
        return self._parser

    def add_argument(self, *args, **kwargs):
        self._parser.add_argument(*args, **kwargs)

    def add_arg(self, key, value):
        self._extra[key] = value

    def command(self, cmd, help=None, handler=None, parents=()):
        if cmd in self._commands:
            raise ValueError('Command already specified: ' + str(cmd))
        if self._subparsers is None:
            self._subparsers = self._parser.add_subparsers(help='Commands (add -h for help)',
                                                           dest='command')
        subparser = self._subparsers.add_parser(cmd, help=help, parents=list(parents))
        self._commands[cmd] = subparser
        if handler is not None:
            self.register_handler(cmd, handler)
        return subparser

    def register_handler(self, cmd, handler):
        if cmd not in self._commands:
            raise ValueError('Undefined command: ' + str(cmd))
        self._handlers[cmd] = handler

    def parse_args(self, argv=None):
        return self._parser.parse_args(argv)

    def finalize(self, ns, ret=None):
        """Run the handler for ns.command; ret if there is none."""
        ns.__dict__.update(self._extra)
        handler = self._handlers.get(getattr(ns, 'command', None))
        if handler is None:
            return ret
        return handler(ns)


# Attribute-style namespace for calling handlers without argparse;
# missing keys read as None.
class GenericArgs(dict):
    def __getattr__(self, name):
        return self.get(name)
    __setattr__ = dict.__setitem__
    __delattr__ = dict.__delitem__
