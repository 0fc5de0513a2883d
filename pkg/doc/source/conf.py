# -*- coding: utf-8 -*-
#
# poolseq documentation build configuration file.
#
# This file is execfile()d with the current directory set to its containing dir.

import sys
import os

# make the package importable for autodoc
sys.path.append(os.path.abspath('../../'))

import poolseq  # @IgnorePep8

# -- General configuration -----------------------------------------------------

extensions = ['sphinx.ext.autodoc', 'sphinx.ext.todo']
templates_path = ['.templates']
source_suffix = '.rst'
master_doc = 'index'

project = u'poolseq'
copyright = u'poolseq developers'

# The short X.Y version.
version = '.'.join(str(i) for i in poolseq.version_info[:2])
# The full version, including alpha/beta/rc tags.
release = poolseq.__version__

exclude_trees = []
pygments_style = 'sphinx'

# -- Options for HTML output ---------------------------------------------------

html_theme = 'default'
html_static_path = ['.static']
htmlhelp_basename = 'poolseqdoc'

# -- Options for LaTeX output --------------------------------------------------

latex_documents = [
    ('index', 'poolseq.tex', u'poolseq Documentation',
     u'poolseq developers', 'manual'),
]
