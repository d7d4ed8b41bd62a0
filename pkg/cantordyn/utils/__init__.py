#!/usr/bin/env python

from .generic import (
    ComparableMixin,
    partition,
    iter_subclasses,
    PrettyPrintTree,
    search,
    SearchBudgetExceeded)
from .rational import (
    to_fraction,
    format_fraction,
    parse_fraction)
