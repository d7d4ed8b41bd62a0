#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Exact solvers used by the comparison and measure modules.

"""

from .simplex import solve_lp, check_farkas, LPResult
from .packing import pack_pieces, PackingResult

__all__ = ['solve_lp', 'check_farkas', 'LPResult', 'pack_pieces', 'PackingResult']
