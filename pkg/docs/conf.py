# -*- coding: utf-8 -*-
#
# Configuration file for the Sphinx documentation builder.
#
# http://www.sphinx-doc.org/en/master/config

# -- Path setup --------------------------------------------------------------

import os
import sys
from datetime import datetime

base_path = os.path.abspath('.')
root_path = os.path.split(base_path)[0]
sys.path.insert(0, root_path)

import SaddleCenterLoops

# -- Project information -----------------------------------------------------

project = 'SaddleCenterLoops'
author = SaddleCenterLoops.pkg_info.__author__
copyright = '{}, {}'.format(datetime.now().year, author)

# The full version, including alpha/beta/rc tags
release = '{}'.format(SaddleCenterLoops.VERSION)
# The short X.Y version
version = '{0}.{1}'.format(*SaddleCenterLoops.VERSION.split('.'))


# -- General configuration ---------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.autosectionlabel',
    'sphinx.ext.autosummary',
    'sphinx.ext.intersphinx',
    'sphinx.ext.mathjax',
    'sphinx.ext.napoleon',
]

intersphinx_mapping = {
    'python': ('https://docs.python.org/3', None),
    'numpy': ('https://numpy.org/doc/stable/', None),
    'scipy': ('https://docs.scipy.org/doc/scipy/', None),
}

# order of members.
autodoc_member_order = 'groupwise'

# autosummary generate stubs.
autosummary_generate = True

rst_prolog = '''
.. |version_str| replace:: v{0}
'''.format(release)

source_suffix = '.rst'

# The master toctree document.
master_doc = 'index'

exclude_patterns = ['_build', 'Thumbs.db', '.DS_Store']

pygments_style = 'monokai'


# -- Options for HTML output -------------------------------------------------

html_theme = 'sphinx_rtd_theme'
html_show_sourcelink = False
html_show_sphinx = False

html_sidebars = {
    '**': ['globaltoc.html',
           'relations.html',
           'sourcelink.html',
           'searchbox.html']
}

htmlhelp_basename = 'SaddleCenterLoopsdoc'


# -- Options for LaTeX output ------------------------------------------------

latex_documents = [
    (master_doc, 'SaddleCenterLoops.tex', 'SaddleCenterLoops Documentation',
     author, 'manual'),
]


# -- Options for manual page output ------------------------------------------

man_pages = [
    (master_doc, 'saddle-loops', 'SaddleCenterLoops Documentation',
     [author], 1)
]
