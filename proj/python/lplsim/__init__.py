"""Structure-preserving stochastic simulation of Lie-Poisson and Langevin systems.

Thin python layer over the C++ core: deterministic noise, Lie-algebra
operations, point-vortex dynamics on the sphere, run execution from JSON
configs, and the verification suites.
"""

import json as _json

try:
    from ._core import *  # noqa: F401,F403
    from ._core import __version__, preset_json, run_json, verify_suite
except ImportError:  # core built out-of-tree (e.g. straight CMake build)
    from _core import *  # noqa: F401,F403
    from _core import __version__, preset_json, run_json, verify_suite


def preset(name):
    """Return a shipped example configuration as a dict."""
    return _json.loads(preset_json(name))


def run(config, out_dir, n_workers=1):
    """Execute a run config (dict or JSON text); writes CSV + summary JSON."""
    if not isinstance(config, str):
        config = _json.dumps(config)
    run_json(config, str(out_dir), n_workers)


def verify(suite="all"):
    """Run a verification suite and return the report as a dict."""
    return _json.loads(verify_suite(suite))
