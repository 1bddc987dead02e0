"""Routes instances to specific methods for classes & their subclasses

Used to define one method per kind of graph (dual graph, spin graph,
(r, h)-graph) for writing documents, drawing exports and picking a
validator, without an isinstance ladder in every caller.

To handle a new kind of object, add a (class, method name) pair to the
_routing_table of the router subclass.
"""

from typing import Callable, Dict, List, Tuple

__version__ = "1.0.0"
__date__ = "18/10/2026"


class InstanceRouter:
    """
    Routes an instance to a call to the specific method intended to handle it. The nearest class in the instance's
    method resolution order wins, so a child class takes precedence over its parent(s)

    _routing_table is a list of (class, method name) pairs, e.g.
    [
        (PreStableGraph, '_write_prestable'),
        (SpinGraph, '_write_spin'),
        (RHGraph, '_write_rh'),
    ]

    Any instance of SpinGraph, or its subclasses, is handled by _write_spin, and so on. The order of the pairs
    does not matter.
    """
    _routing_table: List[Tuple[type, str]] = []

    def __init__(self):
        if not self._routing_table:
            raise AttributeError("InstanceRouter subclass must define _routing_table, as per comment in this file")

        self._methods: Dict[type, str] = {}
        for class_, method in self._routing_table:
            if class_ in self._methods:
                raise AttributeError(f"{class_.__name__} is routed twice")
            self._methods[class_] = method
        self._route_cache: Dict[type, Callable] = {}

    def _get_method(self, key: type) -> Callable:
        for class_ in key.__mro__:
            if class_ in self._methods:
                return getattr(self, self._methods[class_])

        raise NotImplementedError(f"No method for {key.__name__} (or any of its parents)")

    def route_and_call(self, instance, *args, **kwargs):
        """Calls the method routed for the class of 'instance' with the instance and any further arguments"""
        key = type(instance)
        if key not in self._route_cache:
            self._route_cache[key] = self._get_method(key)

        return self._route_cache[key](instance, *args, **kwargs)
