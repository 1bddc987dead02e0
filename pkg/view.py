"""
Graphviz DOT export of dual graphs, spin graphs and (r, h)-graphs

Open vertices are drawn as thick rectangles and closed vertices as circles.
Tails are stubs ending in a point, internal edges and tails are double lines,
boundary edges and tails plain lines, and the dashed lines of an
(r, h)-graph are dashed edges between the clusters of its components.

Output is deterministic: everything is emitted in increasing id order.
"""

import logging

from dual_graph import PreStableGraph
from instance_router import InstanceRouter
from point_insertion import RHGraph
from spin import SpinGraph

__version__ = "1.0.0"
__date__ = "18/10/2026"

logger = logging.getLogger(__name__)

DOT_STYLES = {
    "open_vertex": 'shape=box, penwidth=2',
    "closed_vertex": 'shape=circle',
    "tail": 'shape=point, width=0.05',
    "cb_tail": 'shape=point, width=0.1',
    "boundary": 'color="black"',
    "internal": 'color="black:invis:black"',
    "dashed": 'style=dashed, constraint=false',
}


class DotView(InstanceRouter):
    """Writes the DOT lines of each kind of graph

    Parameters:
        styles (dict<str, str>): Attribute lists overriding DOT_STYLES entries
    """

    _routing_table = [
        (PreStableGraph, "_draw_prestable"),
        (SpinGraph, "_draw_spin"),
        (RHGraph, "_draw_rh"),
    ]

    def __init__(self, styles=None):
        super().__init__()
        self._styles = dict(DOT_STYLES)
        self._styles.update(styles or {})

    def render(self, graph) -> str:
        """(str) Returns the DOT text of 'graph'"""
        lines = ["graph G {"]
        lines.extend("  " + line for line in self.route_and_call(graph))
        lines.append("}")
        return "\n".join(lines) + "\n"

    def _draw_prestable(self, graph, prefix=""):
        return self._draw_graph(graph, None, prefix)

    def _draw_spin(self, spin, prefix=""):
        return self._draw_graph(spin.get_base(), spin, prefix)

    def _draw_rh(self, rh):
        lines = []
        for index, component in enumerate(rh.get_components()):
            lines.append(f"subgraph cluster_{index} {{")
            lines.append(f'  label="component {index}";')
            lines.extend("  " + line for line in self._draw_spin(component, f"c{index}_"))
            lines.append("}")
        for (ci, internal), (cb, boundary) in rh.get_dashed():
            lines.append(f"c{ci}_t{internal} -- c{cb}_t{boundary} [{self._styles['dashed']}];")
        return lines

    def _draw_graph(self, base, spin, prefix):
        lines = []
        for vertex in sorted(base.get_vertices()):
            style = self._styles["open_vertex" if base.is_open(vertex) else "closed_vertex"]
            label = f"v{vertex}"
            if base.get_small_genus(vertex):
                label += f" g={base.get_small_genus(vertex)}"
            lines.append(f'{prefix}v{vertex} [label="{label}", {style}];')

        for tail in sorted(base.get_tails()):
            style = self._styles["cb_tail" if base.is_cb_tail(tail) else "tail"]
            lines.append(f'{prefix}t{tail} [label="", {style}];')
            lines.append(f"{prefix}v{base.get_vertex(tail)} -- {prefix}t{tail} "
                         f"[{self._edge_style(base, tail)}{self._label(base, spin, tail)}];")

        for first, second in base.get_edges():
            lines.append(f"{prefix}v{base.get_vertex(first)} -- {prefix}v{base.get_vertex(second)} "
                         f"[{self._edge_style(base, first)}{self._label(base, spin, first, second)}];")
        return lines

    def _edge_style(self, base, half_edge):
        return self._styles["boundary" if base.is_boundary(half_edge) else "internal"]

    @staticmethod
    def _label(base, spin, *half_edges):
        if spin is None:
            marking = base.get_marking(half_edges[0]) if len(half_edges) == 1 else None
            return "" if marking is None else f', label="{marking}"'
        parts = []
        for half_edge in half_edges:
            text = str(spin.get_twist(half_edge))
            if base.is_boundary(half_edge) and not spin.is_legal(half_edge):
                text += "'"
            parts.append(text)
        return f', label="{"/".join(parts)}"'


def export_dot(graph, styles=None) -> str:
    """(str) Returns a deterministic Graphviz DOT description of a PreStableGraph, SpinGraph or RHGraph

    Spin graphs label tails and edges by their twists, primed when illegal.

    Parameters:
        graph: The object to draw
        styles (dict<str, str>): Overrides of DOT_STYLES entries
    """
    return DotView(styles).render(graph)
