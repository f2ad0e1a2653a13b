import os
import sys
import atexit
import shutil
import tempfile


try:
    HOME = os.path.expanduser("~")
except Exception:  # Exceptions thrown by home() are not specified...
    HOME = "/home"  # Just an arbitrary path


def get_data_dir(*parts, create=True):
    """Get the directory where experiment results are written by default.

    Honors ``FQILAB_DATA_DIR``; otherwise a per-user data directory is
    used. Extra ``parts`` are joined onto it.
    """
    path = os.path.join(_get_base_dir(), *parts)
    if create:
        os.makedirs(path, exist_ok=True)
    return path


def _get_base_dir():
    # Set by user
    dir = os.getenv("FQILAB_DATA_DIR")
    if dir:
        return os.path.abspath(dir)

    # Get user dir
    user_dir = HOME
    if not os.path.isdir(user_dir):
        user_dir = "/var/tmp"

    # Get base data dir
    if sys.platform.startswith("win"):
        path1, path2 = os.getenv("LOCALAPPDATA"), os.getenv("APPDATA")
        base_dir = path1 or path2
    elif sys.platform.startswith("darwin"):
        base_dir = os.path.join(user_dir, "Library", "Application Support")
    else:
        # https://specifications.freedesktop.org/basedir-spec/basedir-spec-latest.html
        base_dir = os.getenv("XDG_DATA_HOME") or os.path.join(HOME, ".local", "share")

    # Fall back to user dir
    if not (base_dir and os.path.isdir(base_dir)):
        base_dir = user_dir

    dir = os.path.join(base_dir, ".fqilab" if base_dir == user_dir else "fqilab")
    try:
        os.makedirs(dir, exist_ok=True)
        if not (os.access(dir, os.W_OK) and os.path.isdir(dir)):
            raise OSError()
    except OSError:
        # If the data directory cannot be created or is not writable,
        # use a temporary one for this session.
        dir = os.environ["FQILAB_DATA_DIR"] = tempfile.mkdtemp(prefix="fqilab-")
        atexit.register(shutil.rmtree, dir)

    return dir
