"""YAML helpers shared by MDPs, fitted models and experiment records."""

import hashlib

import numpy as np
import yaml


def to_builtin(ob):
    """Recursively convert numpy scalars and arrays to plain Python objects."""
    if isinstance(ob, dict):
        return {str(k): to_builtin(v) for k, v in ob.items()}
    elif isinstance(ob, (list, tuple)):
        return [to_builtin(v) for v in ob]
    elif isinstance(ob, np.ndarray):
        return to_builtin(ob.tolist())
    elif isinstance(ob, np.integer):
        return int(ob)
    elif isinstance(ob, np.floating):
        return float(ob)
    elif isinstance(ob, np.bool_):
        return bool(ob)
    return ob


def dump_yaml(data, path=None):
    """Dump a (nested) dict to YAML text, and optionally write it to ``path``."""
    text = yaml.safe_dump(to_builtin(data), sort_keys=False, default_flow_style=None)
    if path is not None:
        try:
            with open(path, "w", encoding="utf-8") as f:
                f.write(text)
        except OSError as err:
            raise OSError(f"Could not write {path}: {err}") from err
    return text


def load_yaml(path):
    """Load a YAML file into a dict."""
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f)
    except OSError as err:
        raise OSError(f"Could not read {path}: {err}") from err
    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ValueError(f"Expected a mapping at the top of {path}.")
    return data


def git_blob_hash(content):
    """Hash bytes (or text) the way ``git hash-object`` does."""
    if isinstance(content, str):
        content = content.encode("utf-8")
    header = f"blob {len(content)}\0".encode("ascii")
    return hashlib.sha1(header + content).hexdigest()
