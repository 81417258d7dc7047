# Sphinx configuration for the relrisk API reference.
import os
import sys
sys.path.insert(0, os.path.abspath('../'))

from relrisk import __version__  # noqa: E402


project = 'relrisk'
copyright = '2024, relrisk contributors'
author = 'relrisk contributors'
version = __version__
release = __version__

extensions = ['sphinx.ext.autodoc',
    'sphinx.ext.coverage',
    'sphinx.ext.napoleon',
    'sphinx.ext.viewcode',
    'autoapi.extension'
]
napoleon_numpy_docstring = True

templates_path = ['_templates']
exclude_patterns = ['_build', 'Thumbs.db', '.DS_Store']

html_theme = 'sphinx_rtd_theme'
html_static_path = ['_static']
html_show_sphinx = False
html_theme_options = {
    'logo_only': False,
    'display_version': True
}

# The shipped model documents are data, not modules.
autoapi_type = 'python'
autoapi_dirs = ['../relrisk', '../fixture_tools']
autoapi_ignore = ['*/models/*']
