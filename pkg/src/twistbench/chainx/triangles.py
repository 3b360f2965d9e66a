# triangles.py - Tensor squares of triangles
# For fx: X1 -> X2 and fy: Y1 -> Y2 with cones X3, Y3 the tensor products X_a Y_b
# form a grid of triangles. Everything is checked at chain level with the
# conventions of complex.py: cone d = [[-d, 0], [f, d]], Koszul-signed tensor
# products, (C[k]) ⊗ D = (C ⊗ D)[k] and C ⊗ (D[k]) -> (C ⊗ D)[k] signed by
# (-1)^{k deg x}.

from __future__ import annotations

import numpy as np

from twistbench.chainx.complex import (
    ChainMap,
    Complex,
    cone,
    cone_inclusion,
    cone_projection,
    direct_sum_complex,
    map_into_sum,
    shift,
    shift_map,
    sum_inclusion,
)
from twistbench.chainx.homology import homology_dims
from twistbench.chainx.homotopy import homotopic
from twistbench.chainx.report import TriangleReport
from twistbench.chainx.tensor import shift_out_left, shift_out_right, summand_offsets, tensor_complex, tensor_maps
from twistbench.errors import AlgebraMismatch, DimensionMismatch
from twistbench.log import get_logger

log = get_logger(__name__)


def _check_inputs(fx: ChainMap, fy: ChainMap) -> None:
    if fx.degree or fy.degree:
        raise DimensionMismatch("triangle maps must have degree zero")
    if fx.source.right is not fy.source.left:
        raise AlgebraMismatch("fx and fy cannot be tensored: middle algebras differ")


def _x_map(f: ChainMap, d: Complex) -> ChainMap:
    return tensor_maps(f, ChainMap.identity(d))


def _y_map(c: Complex, g: ChainMap) -> ChainMap:
    return tensor_maps(ChainMap.identity(c), g)


# =============================================================================
# κ and the Mayer-Vietoris triangle
# =============================================================================


def _cone_comparison(fx: ChainMap, fy: ChainMap, x3: Complex, y3: Complex, kap: Complex,
                     target: Complex) -> ChainMap:
    """X3 Y3 -> cone(κ -> X2 Y2), a signed reshuffle of tensor summands.

    Pieces x1 y1 carry (-1)^{deg x1}, pieces x2 y1 carry (-1)^{deg x2}.
    """
    x1, x2, y1, y2 = fx.source, fx.target, fy.source, fy.target
    x11, x12 = tensor_complex(x1, y1), tensor_complex(x1, y2)
    src = tensor_complex(x3, y3)
    offs = {
        "11": summand_offsets(x1, y1),
        "12": summand_offsets(x1, y2),
        "21": summand_offsets(x2, y1),
        "22": summand_offsets(x2, y2),
    }
    comps = {}
    for n, table in summand_offsets(x3, y3).items():
        m = np.zeros((target.dim(n), src.dim(n)), dtype=np.int64)
        for (p, ia, ib), (col, size) in table.items():
            q = n - p
            n1x, n1y = len(x1.atoms(p - 1)), len(y1.atoms(q - 1))
            xa, xi, xdeg = ("1", ia, p - 1) if ia < n1x else ("2", ia - n1x, p)
            ya, yi, ydeg = ("1", ib, q - 1) if ib < n1y else ("2", ib - n1y, q)
            key = xa + ya
            tdeg = xdeg + ydeg
            if key == "11":
                base, sign = 0, (-1) ** xdeg
            elif key == "12":
                base, sign = x11.dim(n - 2), 1
            elif key == "21":
                base, sign = x11.dim(n - 2) + x12.dim(n - 1), (-1) ** xdeg
            else:
                base, sign = kap.dim(n - 1), 1
            row, _ = offs[key][tdeg][(xdeg, xi, yi)]
            m[base + row:base + row + size, col:col + size] = sign * np.eye(size, dtype=np.int64)
        comps[n] = m
    return ChainMap.build(src, target, comps)


def kappa(fx: ChainMap, fy: ChainMap) -> tuple[Complex, TriangleReport]:
    """κ = cone(X1Y1 -> X1Y2 ⊕ X2Y1) with the Mayer-Vietoris checks."""
    _check_inputs(fx, fy)
    x1, x2, y1, y2 = fx.source, fx.target, fy.source, fy.target
    x11, x12 = tensor_complex(x1, y1), tensor_complex(x1, y2)
    x21, x22 = tensor_complex(x2, y1), tensor_complex(x2, y2)
    report = TriangleReport("kappa")

    middle = direct_sum_complex([x12, x21], name="X1Y2⊕X2Y1")
    phi = map_into_sum([_y_map(x1, fy), -_x_map(fx, y1)], middle)
    kap = cone(phi, name="κ")

    # κ -> X2Y2 is [0, fx Y2, X2 fy]
    comps = {}
    for n in kap.degrees:
        m = np.zeros((x22.dim(n), kap.dim(n)), dtype=np.int64)
        left = x11.dim(n - 1)
        m[:, left:left + x12.dim(n)] = _x_map(fx, y2).component(n)
        m[:, left + x12.dim(n):] = _y_map(x2, fy).component(n)
        comps[n] = m
    psi = ChainMap.build(kap, x22, comps)

    with report.timed():
        report.add("phi_is_chain_map", phi.is_chain_map())
        report.add("kappa_d_squared", kap.check())
        report.add("kappa_to_x2y2_is_chain_map", psi.is_chain_map())

        into = cone_inclusion(phi, kap)
        from_x21 = into.compose(sum_inclusion([x12, x21], middle, 1))
        from_x12 = into.compose(sum_inclusion([x12, x21], middle, 0))
        report.add("composite_x2y1", homotopic(psi.compose(from_x21), _y_map(x2, fy)))
        report.add("composite_x1y2", homotopic(psi.compose(from_x12), _x_map(fx, y2)))

    x3, y3 = cone(fx, name="X3"), cone(fy, name="Y3")
    with report.timed():
        top = cone(psi, name="cone(κ->X2Y2)")
        x33 = tensor_complex(x3, y3)
        dims_top, dims_33 = homology_dims(top), homology_dims(x33)
        report.add("cone_homology_matches_x3y3", dims_top == dims_33, cone=dims_top, x3y3=dims_33)
        sigma = _cone_comparison(fx, fy, x3, y3, kap, top)
        report.add("cone_comparison_is_iso", sigma.is_chain_map() and sigma.is_degreewise_invertible())

    with report.timed():
        mv1 = homology_dims(cone(from_x21))
        x13 = homology_dims(tensor_complex(x1, y3))
        report.add("mayer_vietoris_x1y3", mv1 == x13, cone=mv1, x1y3=x13)
        mv2 = homology_dims(cone(from_x12))
        x31 = homology_dims(tensor_complex(x3, y1))
        report.add("mayer_vietoris_x3y1", mv2 == x31, cone=mv2, x3y1=x31)

    log.debug("kappa: dims %s, verdict %s", kap.dims, report.verdict.value)
    return kap, report


# =============================================================================
# The 4 x 4 grid
# =============================================================================


class _Grid:
    """Objects X_a Y_b and the maps between them, with shifts pulled outside."""

    def __init__(self, fx: ChainMap, fy: ChainMap, koszul_signs: bool) -> None:
        self.koszul_signs = koszul_signs
        x1, x2, y1, y2 = fx.source, fx.target, fy.source, fy.target
        x3, y3 = cone(fx, name="X3"), cone(fy, name="Y3")
        sx1, sy1 = shift(x1, 1), shift(y1, 1)
        self.xs, self.ys = [x1, x2, x3], [y1, y2, y3]
        self.x_maps = [fx, cone_inclusion(fx, x3), cone_projection(fx, x3, sx1)]
        self.y_maps = [fy, cone_inclusion(fy, y3), cone_projection(fy, y3, sy1)]
        self.sx1, self.sy1 = sx1, sy1

        self.cells: dict[tuple[int, int], Complex] = {}
        for a in range(3):
            for b in range(3):
                self.cells[a, b] = tensor_complex(self.xs[a], self.ys[b])
        for b in range(3):
            self.cells[3, b] = shift(self.cells[0, b], 1)
        for a in range(3):
            self.cells[a, 3] = shift(self.cells[a, 0], 1)
        self.cells[3, 3] = shift(self.cells[3, 0], 1)

    def _pull_right(self, c: Complex, target: Complex) -> ChainMap:
        """C ⊗ (Y1[1]) -> (C ⊗ Y1)[1]."""
        m = shift_out_right(c, self.sy1, 1, target)
        if self.koszul_signs:
            return m
        src = m.source
        return ChainMap.build(src, target, {n: np.eye(src.dim(n), dtype=np.int64) for n in src.degrees})

    def horizontal(self, a: int, b: int) -> ChainMap:
        """Cell (a, b) -> cell (a, b + 1)."""
        if a < 3:
            x = self.xs[a]
            if b < 2:
                return _y_map(x, self.y_maps[b])
            return self._pull_right(x, self.cells[a, 3]).compose(_y_map(x, self.y_maps[2]))
        inner = self.horizontal(0, b)
        return shift_map(inner, 1, source=self.cells[3, b], target=self.cells[3, b + 1])

    def vertical(self, a: int, b: int) -> ChainMap:
        """Cell (a, b) -> cell (a + 1, b)."""
        if b < 3:
            y = self.ys[b]
            if a < 2:
                return _x_map(self.x_maps[a], y)
            pull = shift_out_left(self.sx1, y, 1, self.cells[3, b])
            return pull.compose(_x_map(self.x_maps[2], y))
        inner = self.vertical(a, 0)
        return shift_map(inner, 1, source=self.cells[a, 3], target=self.cells[a + 1, 3])


def braid_grid_check(fx: ChainMap, fy: ChainMap, *, koszul_signs: bool = True) -> TriangleReport:
    """Every square of the grid commutes up to homotopy, the bottom-right one anticommutes.

    koszul_signs=False drops the sign of C ⊗ (D[1]) -> (C ⊗ D)[1]; the
    anticommuting square then fails whenever X1 Y1 carries homology that
    survives to X3 Y3.
    """
    _check_inputs(fx, fy)
    grid = _Grid(fx, fy, koszul_signs)
    report = TriangleReport("grid" if koszul_signs else "grid-unsigned")
    with report.timed():
        for a in range(3):
            for b in range(3):
                route_h = grid.vertical(a, b + 1).compose(grid.horizontal(a, b))
                route_v = grid.horizontal(a + 1, b).compose(grid.vertical(a, b))
                if (a, b) == (2, 2):
                    ok = homotopic(route_h, -route_v)
                    report.add(f"square_{a + 1}{b + 1}_anticommutes", ok)
                else:
                    ok = homotopic(route_h, route_v)
                    report.add(f"square_{a + 1}{b + 1}_commutes", ok)
    return report
