import sys
import subprocess

import fqilab


def _run(code, env=None):
    p = subprocess.run(
        [
            sys.executable,
            "-c",
            code,
        ],
        stdout=subprocess.PIPE,
        stderr=subprocess.STDOUT,
        universal_newlines=True,
        env=env,
    )
    return p.stdout.strip()


def test_import_does_not_configure_logging():
    code = "import fqilab; print(fqilab.logger.level, len(fqilab.logger.handlers))"
    result = _run(code)
    print(result)
    # WARN level, and no handlers: the application decides where logs go
    assert result.endswith("30 0")


def test_log_level_from_environment():
    import os

    env = dict(os.environ, FQILAB_LOG_LEVEL="debug")
    result = _run("import fqilab; print(fqilab.logger.level)", env)
    assert result.endswith("10")


def test_version():
    assert fqilab.__version__.count(".") == 2
    assert fqilab.version_info == tuple(int(x) for x in fqilab.__version__.split("."))


def test_toplevel_namespace():
    for name in ("run_fqi", "make_env", "eig_sequence", "run_rate_experiment", "logger"):
        assert hasattr(fqilab, name), name
