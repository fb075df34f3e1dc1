# Configuration file for the Sphinx documentation builder.
#
# For the full list of built-in configuration values, see the documentation:
# https://www.sphinx-doc.org/en/master/usage/configuration.html
import os
import sys
import time

sys.path.insert(0, os.path.abspath('../..'))

# -- Project information -----------------------------------------------------

project = 'Discrepz'
copyright = f'{time.localtime().tm_year}, Discrepz developers'
author = 'Discrepz developers'

# -- General configuration ---------------------------------------------------

extensions = ['sphinx.ext.autodoc', 'sphinx.ext.doctest',
              'sphinx_math_dollar', 'sphinx.ext.mathjax', 'numpydoc',
              'sphinx_copybutton', 'myst_parser', 'sphinx.ext.intersphinx', ]

# To stop docstrings inheritance.
autodoc_inherit_docstrings = False
numpydoc_show_class_members = False

templates_path = ['_templates']
exclude_patterns = []

source_suffix = {
    '.rst': 'restructuredtext',
    '.md': 'markdown',
}

mathjax3_config = {
    "tex": {
        "inlineMath": [['\\(', '\\)']],
        "displayMath": [["\\[", "\\]"]],
    },
}

# -- Options for HTML output -------------------------------------------------

html_theme = 'furo'
html_domain_indices = ['py-modindex']
