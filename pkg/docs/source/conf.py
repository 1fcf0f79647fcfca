# Configuration file for the Sphinx documentation builder.
#
# For the full list of options see the documentation:
# http://www.sphinx-doc.org/en/master/config

# -- Path setup --------------------------------------------------------------

import os
import sys
sys.path.insert(0, os.path.abspath('../..'))


# -- Project information -----------------------------------------------------

project = 'tropico'
copyright = '2026, the tropico developers'
author = 'the tropico developers'

# The full version, including alpha/beta/rc tags
exec(open(os.path.abspath('../../tropico/version.py')).read())
release = __version__


# -- General configuration ---------------------------------------------------

# recommonmark reads the markdown pages
extensions = ['recommonmark', 'sphinx.ext.autodoc']

templates_path = ['_templates']
exclude_patterns = []


# -- Options for HTML output -------------------------------------------------

html_theme = 'alabaster'
html_static_path = ['_static']
