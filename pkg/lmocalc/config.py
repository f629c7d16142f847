#!/usr/bin/python3

import json
import os

DEFAULT_PATH = '~/.lmocalc.json'

DEFAULTS = {'max_ideg': 2,
            'table': None,
            'format': 'text',
            'enumeration_limit': 6,
            'seed': 0,
            'trials': 20}


def get_config(path=None):
    """Read the JSON config; a missing default file is an empty config.

    An explicitly named file that does not exist raises FileNotFoundError.
    """
    explicit = path is not None
    config_path = os.path.expanduser(path if explicit else DEFAULT_PATH)
    if not explicit and not os.path.exists(config_path):
        return {}
    with open(config_path) as config_file:
        config = json.load(config_file)
    if not isinstance(config, dict):
        raise ValueError('{0}: configuration must be a JSON object'.format(config_path))
    return config


def setting(ns, config, key):
    """CLI flag, then config file, then built-in default."""
    value = getattr(ns, key, None)
    if value is not None:
        return value
    return config.get(key, DEFAULTS[key])
