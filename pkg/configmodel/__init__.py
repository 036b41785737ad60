import copy
import logging
import os
from pprint import pformat

from lottery.errors import ConfigError

# Suffix of a key whose value names the environment variable holding the real value
FROM_VAR_SUFFIX = "_from_var"

_MISSING = object()


class LottoEdgeConfigModel:
    """Settings of lotto-edge, as a tree of dictionaries addressed by dotted paths.
    e.g.: `config.get("portfolio.theta")`

    Any entry may be given indirectly: `theta_from_var: MY_THETA` reads $MY_THETA.
    """

    def __init__(self, conf=None):
        self.conf = conf if conf is not None else {}
        if not isinstance(self.conf, dict):
            raise ConfigError(f"settings must be a YAML mapping (was: {type(self.conf).__name__})")

    def _lookup(self, path):
        node = self.conf
        for key in path:
            if not isinstance(node, dict) or key not in node:
                return _MISSING
            node = node[key]
        return node

    def get(self, path, default=None):
        """Value at `path`, else the environment variable named by `<path>_from_var`, else `default`"""
        path = path_to_list(path)
        if not path:
            return self.conf

        value = self._lookup(path)
        if value is not _MISSING:
            return value

        env_name = self._lookup([*path[:-1], path[-1] + FROM_VAR_SUFFIX])
        if env_name is not _MISSING and env_name in os.environ:
            return os.environ[env_name]

        logging.debug(f"Config path {path} was not found, using default {default!r}")
        return default

    def get_number(self, path, default=None, kind=float):
        """get(), converted to `kind`. Values coming from environment variables are strings."""
        value = self.get(path, default)
        if value is None:
            return None
        try:
            return kind(value)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"setting '{'.'.join(path_to_list(path))}' must be a number (was: {value!r})") from exc

    def exists(self, path):
        """True if `path` is present, even with a None value"""
        return self._lookup(path_to_list(path)) is not _MISSING

    def set(self, path, value, overwrite=True):
        """Sets `path` to `value`, creating intermediate mappings.
        With overwrite=False, neither an existing value nor a non-mapping on the way is replaced.
        Returns True if the settings changed.
        """
        path = path_to_list(path)
        node = self.conf
        for key in path[:-1]:
            child = node.get(key)
            if child is None:
                node[key] = {}
            elif not isinstance(child, dict):
                if not overwrite:
                    logging.info(f"LottoEdgeConfigModel.set(): '{key}' of {path} is not a mapping, leaving it")
                    return False
                logging.warning(f"LottoEdgeConfigModel.set(): replacing '{key}' of {path} by a mapping")
                node[key] = {}
            node = node[key]

        if not overwrite and node.get(path[-1]) is not None:
            return False
        node[path[-1]] = value
        return True

    def merge(self, merge, preserve=False):
        """Recursively merges the mapping `merge` into the settings.
        With preserve=True, values already set win over the merged ones.
        """
        if not merge:
            return
        if not isinstance(merge, dict):
            raise ConfigError(f"only a mapping can be merged into the settings (was: {type(merge).__name__})")

        deep_dict_merge(self.conf, merge, preserve)

    def __repr__(self):
        return pformat(self.conf, indent=4)


def path_to_list(path):
    """'a.b.c' -> ['a', 'b', 'c']; lists and tuples are copied; None -> []"""
    if not path:
        return []
    if isinstance(path, str):
        return path.split(".")
    return list(path)


def deep_dict_merge(dest, merge, preserve=False):
    """Merges `merge` into `dest` (modified in place and returned), descending into mappings
    present on both sides. On any other collision, `preserve` keeps the value of `dest`,
    unless that value is None. With `preserve`, a key that `dest` gives as `<key>_from_var`
    counts as set. Merged values are deep-copied.
    """
    if merge is None:
        return dest

    for key, val in merge.items():
        current = dest.get(key)
        if isinstance(current, dict) and isinstance(val, dict):
            deep_dict_merge(current, val, preserve)
        elif preserve and key + FROM_VAR_SUFFIX in dest:
            continue
        elif current is None or not preserve:
            dest[key] = copy.deepcopy(val)
    return dest
