"""Module containing small numeric helpers and the record base type shared by all modules"""
import enum
import math
import numbers

import numpy as np

from .exc import DomainError

__all__ = ["Record", "csum", "check_probability", "check_positive_int", "check_count", "to_jsonable"]


#{ Utilities

def csum(values):
    """Sum the given values with error-free transformations (Shewchuk partials)

    :param values: iterable of floats or a numpy array
    :return: the correctly rounded sum as python float"""
    if isinstance(values, np.ndarray):
        values = values.ravel().tolist()
    return math.fsum(values)


def check_probability(value, name='p', open_interval=False):
    """:return: value as float if it is a probability
    :param open_interval: if True, 0 and 1 are rejected as well
    :raise DomainError: if value is not a probability"""
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise DomainError("%s must be a number, got %r" % (name, value))
    # END handle conversion
    if open_interval:
        if not 0.0 < value < 1.0:
            raise DomainError("%s must lie in (0, 1), got %r" % (name, value))
    elif not 0.0 <= value <= 1.0:
        raise DomainError("%s must lie in [0, 1], got %r" % (name, value))
    # END handle interval
    return value


def check_positive_int(value, name, minimum=1):
    """:return: value as int if it is an integer of at least minimum
    :raise DomainError: otherwise"""
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        raise DomainError("%s must be an integer, got %r" % (name, value))
    if value < minimum:
        raise DomainError("%s must be >= %i, got %i" % (name, minimum, value))
    return int(value)


def check_count(value, name='count'):
    """:return: value as int if it is a non-negative integer"""
    return check_positive_int(value, name, minimum=0)


def to_jsonable(obj):
    """Convert records, enums and numpy scalars into plain json types, recursively"""
    if isinstance(obj, Record):
        return to_jsonable(obj.as_dict())
    if isinstance(obj, dict):
        return dict((str(key), to_jsonable(val)) for key, val in obj.items())
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(val) for val in obj]
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        obj = float(obj)
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    return obj

#} END utilities


#{ Utility Classes

class Record(object):

    """Base for plain result types. Subclasses list their fields in ``__slots__``,
    in the order they are reported"""
    __slots__ = ()

    def __init__(self, **kwargs):
        for name in self.__slots__:
            setattr(self, name, kwargs.pop(name, None))
        # END for each field
        if kwargs:
            raise TypeError("Unknown fields for %s: %s" % (type(self).__name__, ', '.join(sorted(kwargs))))

    def __repr__(self):
        return "%s(%s)" % (type(self).__name__,
                           ', '.join("%s=%r" % (name, getattr(self, name)) for name in self.__slots__))

    def __eq__(self, rhs):
        if type(rhs) is not type(self):
            return NotImplemented
        return self.as_dict() == rhs.as_dict()

    def __ne__(self, rhs):
        res = self.__eq__(rhs)
        return res if res is NotImplemented else not res

    __hash__ = None

    def as_dict(self):
        """:return: dict of all fields, in declaration order"""
        return dict((name, getattr(self, name)) for name in self.__slots__)

    def copy(self):
        """:return: shallow copy of this record"""
        return type(self)(**self.as_dict())

#} END utility classes
