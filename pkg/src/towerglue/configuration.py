"""Configurations: a torus graph with a saddle tower at every vertex.

:func:`assemble` validates the pieces and solves the towers; the resulting
:class:`Configuration` carries everything the horizontal and vertical
analyses need.  :func:`full_report` produces the four verdicts.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import cached_property

import numpy as np

from . import chain_spaces as cs
from . import horizontal as hz
from . import saddle_tower as st
from . import torus_rep as tr
from . import vertical as vt
from .errors import GenusMismatch, InvalidInput, ShiftMismatch, TowerGlueError
from .rotation_graph import RotationGraph, orient

TWO_PI = 2 * np.pi


@dataclass
class Configuration:
    graph: RotationGraph
    rep: tr.TorusRep
    orientation: np.ndarray
    towers: list
    tower_data: list
    phases: np.ndarray | None = None
    shifts: tuple | None = None
    lam: tuple = (0j, 0j)
    K_override: np.ndarray | None = None
    name: str = ""

    @cached_property
    def lengths(self) -> np.ndarray:
        return self.rep.lengths()

    @cached_property
    def cuts(self):
        return cs.cut_basis(self.graph)

    @cached_property
    def all_cuts(self):
        return cs.all_cuts(self.graph)

    @cached_property
    def mdiv_cuts(self):
        return cs.mdiv_cut_basis(self.graph, self.lengths)

    @cached_property
    def cycles(self):
        return self.rep.cycle_basis()

    @cached_property
    def rigidity_matrix(self):
        return hz.rigidity_matrix(self.rep, cuts=self.cuts, cycles=self.cycles)

    def _per_halfedge(self, attr) -> np.ndarray:
        g = self.graph
        out = np.empty(g.n_halfedges, dtype=complex if attr == "mu" else float)
        for v, cyc in enumerate(g.vertices):
            vals = getattr(self.tower_data[v], attr)
            for j, h in enumerate(cyc):
                out[h] = vals[j]
        return out

    @cached_property
    def upsilon_half(self) -> np.ndarray:
        return self._per_halfedge("upsilon")

    @cached_property
    def mu_half(self) -> np.ndarray:
        return self._per_halfedge("mu")

    @property
    def predicted_genus(self) -> int:
        return self.graph.n_faces + 1


def tower_at(rep: tr.TorusRep, orientation, v: int) -> st.SaddleTower:
    g = rep.graph
    xh = rep.halfedge_vectors()
    cyc = g.vertices[v]
    angles = np.angle(xh[list(cyc)])
    signs = orientation[list(cyc)]
    return st.SaddleTower.solve(angles, signs)


def assemble(graph: RotationGraph, rep: tr.TorusRep, phases=None, shifts=None,
             lam=(0j, 0j), K_override=None, check_geometry=True, name="") -> Configuration:
    """Validate and build a configuration.

    ``phases`` is an edge array (or None).  When ``shifts`` is given it must
    agree modulo 2 pi with the circulation of the phases around the period
    cycles; otherwise it is read off the phases.
    """
    if graph.genus != 1:
        raise GenusMismatch(f"graph has genus {graph.genus}, a torus graph is required")
    orientation = orient(graph)
    if check_geometry:
        tr.validate(rep)
    towers = [tower_at(rep, orientation, v) for v in range(graph.n_vertices)]
    data = [st.analyze(t) for t in towers]
    cfg = Configuration(graph, rep, orientation, towers, data,
                        lam=(complex(lam[0]), complex(lam[1])), name=name)
    if K_override is not None:
        K_override = np.asarray(K_override, dtype=float)
        if K_override.shape != (graph.n_edges,):
            raise InvalidInput("K override needs one value per edge")
        cfg.K_override = K_override
    if phases is not None:
        phases = np.asarray(phases, dtype=float)
        if phases.shape != (graph.n_edges,):
            raise InvalidInput("one phase per edge required")
        periods = vt.phase_periods(cfg, phases)
        for c, p in zip(cfg.cycles[:-2], periods[:-2]):
            if abs(st.wrap(p)) > 1e-9:
                raise ShiftMismatch(f"phases circulate {p:.6g} around {c.label}, not 0 mod 2pi")
        observed = (periods[-2], periods[-1])
        if shifts is None:
            shifts = (st.wrap(observed[0]), st.wrap(observed[1]))
        else:
            for i in (0, 1):
                if abs(st.wrap(observed[i] - shifts[i])) > 1e-9:
                    raise ShiftMismatch(f"shift {i + 1} is {shifts[i]:.6g} but the phases "
                                        f"circulate {observed[i]:.6g}")
        cfg.phases = phases
    if shifts is not None:
        cfg.shifts = (float(shifts[0]), float(shifts[1]))
    return cfg


def rescaled(cfg: Configuration, kappa_half) -> Configuration:
    """Same configuration with adapted coordinates ``w_h -> kappa_h w_h``."""
    kappa_half = np.asarray(kappa_half, dtype=float)
    data = [st.analyze(t, kappa_half[list(cyc)]) for t, cyc in zip(cfg.towers, cfg.graph.vertices)]
    return replace(cfg, tower_data=data)


@dataclass
class Report:
    horizontal: hz.HorizontalReport
    vertical: vt.VerticalReport | None
    vertical_error: str | None
    predicted_genus: int
    genus_formula: str = field(default="faces + 1")

    @property
    def verdicts(self) -> list[str]:
        out = ["horizontally balanced" if self.horizontal.balanced else "horizontally unbalanced",
               "horizontally rigid" if self.horizontal.rigid else "horizontally non-rigid"]
        if self.vertical is None:
            out.append("vertical analysis unavailable")
        else:
            out.append("vertically balanced" if self.vertical.balanced else "vertically unbalanced")
            out.append("vertically rigid" if self.vertical.rigid else "vertically non-rigid")
        return out

    @property
    def ok(self) -> bool:
        return bool(self.horizontal.balanced and self.horizontal.rigid and self.vertical is not None
                    and self.vertical.balanced and self.vertical.rigid)


def full_report(cfg: Configuration, tol=1e-10) -> Report:
    h = hz.report(cfg.rep, tol=tol)
    v, err = None, None
    if cfg.phases is None:
        err = "no phases given"
    else:
        try:
            v = vt.report(cfg, tol=tol)
        except TowerGlueError as exc:
            err = f"{type(exc).__name__}: {exc}"
    return Report(h, v, err, cfg.predicted_genus)
