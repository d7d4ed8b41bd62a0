#!/usr/bin/env python
"""
Exact rational helpers used for step-function values, contents and
LP multipliers.

"""

import re
from fractions import Fraction

__all__ = ['to_fraction', 'format_fraction', 'parse_fraction']

FRACTION_PAT = re.compile(r'^-?\d+(/\d+)?$')


def to_fraction(value):
    """Convert an int, Fraction or numeric string to a Fraction. Floats
    are rejected since they would silently introduce rounding.

    >>> to_fraction('3/4')
    Fraction(3, 4)
    >>> to_fraction(2)
    Fraction(2, 1)

    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError('Expected an exact number, got {!r}'.format(value))
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_fraction(value)
    # numpy integers
    try:
        return Fraction(int(value))
    except (TypeError, ValueError):
        raise TypeError('Cannot convert {!r} to a fraction'.format(value))


def format_fraction(value):
    """
    >>> format_fraction(Fraction(1, 4))
    '1/4'
    >>> format_fraction(Fraction(-2))
    '-2'

    """
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return '{}/{}'.format(value.numerator, value.denominator)


def parse_fraction(text):
    """
    >>> parse_fraction('-1/2')
    Fraction(-1, 2)

    """
    text = text.strip()
    if not FRACTION_PAT.match(text):
        raise ValueError('Not a rational number: {!r}'.format(text))
    return Fraction(text)


if __name__ == '__main__':
    import doctest
    doctest.testmod()
