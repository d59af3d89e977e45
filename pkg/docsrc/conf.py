# Configuration file for the Sphinx documentation builder.
#
# This file only contains a selection of the most common options. For a full
# list see the documentation:
# https://www.sphinx-doc.org/en/master/usage/configuration.html

# -- Path setup --------------------------------------------------------------

import os
import sys
module_path = os.path.abspath('..')
if not os.path.exists(os.path.join(module_path, 'jordanlp')):
    raise FileNotFoundError(f"package jordanlp not found under {module_path}")
sys.path.insert(0, module_path)

# -- Project information -----------------------------------------------------

project = 'jordanlp'
copyright = '2021, Ethan Ho, Kelly Pierce'
author = 'Ethan Ho, Kelly Pierce'

version = '0.1.0'
# The full version, including alpha/beta/rc tags
release = '0.1.0'

# -- General configuration ---------------------------------------------------

extensions = ['sphinx.ext.autodoc', 'sphinx.ext.mathjax',
              'sphinx.ext.githubpages', 'recommonmark']

templates_path = ['_templates']
source_suffix = ['.rst', '.md']

# The master toctree document.
master_doc = 'index'

language = None

exclude_patterns = ['_build', 'Thumbs.db', '.DS_Store']

pygments_style = None

# -- Options for HTML output -------------------------------------------------

html_theme = 'sphinx_rtd_theme'

html_static_path = ['_static']
