# -*- coding: utf-8 -*-
"""Internal modules - not part of public API."""
