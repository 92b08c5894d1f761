"""
Sphinx configuration for the tempograph API docs. The markdown pages in
``docs/`` are copied into ``help/`` by ``generate-docs.sh``.
"""
import os
import subprocess
import sys

sys.path.insert(0, os.path.abspath("../../"))

if os.getenv("READTHEDOCS", False) and not os.path.exists("tempograph.rst"):
    subprocess.check_call(["../../generate-docs.sh", "generate"])

from tempograph import __author__, __version__  # noqa: E402

project = "Tempograph"
copyright = "2026, " + __author__
author = __author__
release = __version__

extensions = ["sphinx.ext.autodoc", "recommonmark"]

autodoc_default_options = {
    "members": True,
    "member-order": "bysource",
    "special-members": "__init__",
}

templates_path = ["_templates"]
html_static_path = ["_static"]

source_suffix = [".rst", ".md"]

html_theme = "alabaster"
pygments_style = "sphinx"

if os.getenv("READTHEDOCS", False):
    import sphinx_rtd_theme  # noqa: F401

    extensions.append("sphinx_rtd_theme")
    html_theme = "sphinx_rtd_theme"
