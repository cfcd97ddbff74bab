# This file can be left empty. It's here to mark the directory as a Python package.
