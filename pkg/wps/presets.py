"""Curated documents and the reproduction bundles behind `wps reproduce`.

Documents use the same JSON shapes the CLI reads from files, so every
preset can be dumped, edited and fed back through the ordinary verbs.
"""

import logging
from fractions import Fraction
from typing import Callable, Optional

from wps.config import Config
from wps.errors import DomainError
from wps.groebner import degree, hilbert_series, implicitize, resolution_data, same_ideal
from wps.hilbert import reduce_series
from wps.kw import BlockSpec, build_kw_matrix, pseudo_1generic_probe, structural_1generic_check
from wps.lowdim import conjecture_report, final_remark_check, profile_search
from wps.param import ParamSeries, parameterize_curve, verify_parameterization
from wps.parse import ideal_from_document, load_ideal_document, matrix_from_document, parse_polynomial
from wps.ring import WeightSystem, minors
from wps.scroll import (
    Profile,
    betti_from_profile,
    check_wNp,
    cone_profile,
    enumerate_scrolls,
    regularities,
    w_upper,
)
from wps.serialize import format_rational, to_tsv

logger = logging.getLogger(__name__)

P1122 = ["x1", "x2", "y1", "y2"]
P1_3_2_3 = ["x1", "x2", "x3", "y1", "y2", "y3"]
P1_4_2_3 = ["x1", "x2", "x3", "x4", "y1", "y2", "y3"]
P1_2_3_2_6_3 = ["x1", "x2", "y1", "y2", "z1", "z2", "z3"]

IDEALS = {
    "example211": {
        "weights": [2, 3, 5, 5],
        "variables": ["x", "y", "z1", "z2"],
        "generators": ["z1 - z2 + x*y", "x^3*z1 + 2*y^2*z1 + x^3*z2 - y^2*z2"],
    },
    "c0": {
        "weights": [1, 1, 2, 2],
        "variables": P1122,
        "generators": ["x2*y1 - x1*y2", "x1*x2^3 - y2^2", "x1^2*x2^2 - y1*y2", "x1^3*x2 - y1^2"],
    },
    "ci1347": {
        "weights": [1, 3, 4, 7],
        "variables": ["x", "y", "z", "w"],
        "generators": ["y^2 - x^2*z", "z^2 - x*w"],
    },
    "hyperplane122": {
        "weights": [1, 2, 2],
        "variables": ["x1", "y1", "y2"],
        "generators": ["x1"],
    },
}

MATRICES = {
    "c1": {"weights": [1, 1, 2, 2], "variables": P1122,
           "matrix": [["x1", "x2^2", "y1"], ["x2", "y1", "y2"]]},
    "c2": {"weights": [1, 1, 2, 2], "variables": P1122,
           "matrix": [["y1", "x1", "x2^2"], ["x1^2", "x2", "y2"]]},
    "intro_m1": {"weights": [1, 1, 3, 3, 3], "variables": ["x1", "x2", "y1", "y2", "y3"],
                 "matrix": [["x1", "y1", "y2", "y3"], ["x2", "x1^3", "y1", "y2"]]},
    "intro_m2": {"weights": [1, 1, 3, 3, 3], "variables": ["x1", "x2", "y1", "y2", "y3"],
                 "matrix": [["x1", "y1", "y2", "y3"], ["x2", "x1^3", "y2 + x1^3", "-y3 + x1^3"]]},
    "example45_m": {"weights": [1, 1, 1, 2, 2, 2], "variables": P1_3_2_3,
                    "matrix": [["x1", "x2^2", "y1", "y2"], ["x2", "y1", "x3^2", "y3"]]},
    "example45_n": {"weights": [1, 1, 1, 2, 2, 2], "variables": P1_3_2_3,
                    "matrix": [["x1", "x2^2", "y1", "y2"], ["x2", "x3^2", "y2", "y3"]]},
    "example46": {"weights": [1, 1, 2, 2, 2, 2, 2, 2, 2],
                  "variables": ["x1", "x2"] + [f"y{i}" for i in range(1, 8)],
                  "matrix": [["x1^2", "x1*x2", "y1"], ["y2", "y3", "y4"], ["y5", "y6", "y7"]]},
    "example47_m": {"weights": [1, 1, 1, 1, 2, 2, 2], "variables": P1_4_2_3,
                    "matrix": [["x1", "y1", "x3^2 + x2^2", "y3"], ["x2", "y2", "y3", "x4^2"]]},
    "example47_mprime": {"weights": [1, 1, 1, 1, 2, 2, 2], "variables": P1_4_2_3,
                         "matrix": [["x1", "y1", "x3^2", "y3"], ["x2", "y2", "y3", "x4^2"]]},
    "example47_mpp": {"weights": [1, 1, 1, 1, 2, 2, 2], "variables": P1_4_2_3,
                      "matrix": [["x1", "y1", "-x3^2", "y3"], ["x2", "y2", "y3 + 2*x3*x4", "x4^2"]]},
    "example421": {"weights": [1, 1, 1, 2, 2], "variables": ["x1", "x2", "x3", "y1", "y2"],
                   "matrix": [["x1", "x2^2", "y1"], ["x2", "x3^2", "y2"]]},
    "example513_y1": {"weights": [1, 1, 3, 3, 6, 6, 6], "variables": P1_2_3_2_6_3,
                      "matrix": [["x1", "y1", "y2", "z1", "z2"], ["x2", "y2", "x2^3", "z2", "y2^2"]]},
    "example513_y2": {"weights": [1, 1, 3, 3, 6, 6, 6], "variables": P1_2_3_2_6_3,
                      "matrix": [["x1", "y1", "z1", "z2", "z3"], ["x2", "x1^3", "z2", "z3", "y1^2"]]},
    "final_remark": {"weights": [1, 3, 4, 7], "variables": ["x", "y", "z", "w"],
                     "matrix": [["x", "y", "z"], ["x^4 + z", "x^6 + x^3*y", "w"]]},
}


def remark413_matrix(epsilon) -> dict:
    """[[x1, y1, y2], [x2, y2 + ε y1, ε y2 + x1²]] over P(1,1,2,2)."""
    e = format_rational(epsilon)
    return {"weights": [1, 1, 2, 2], "variables": P1122,
            "matrix": [["x1", "y1", "y2"], ["x2", f"y2 + ({e})*y1", f"({e})*y2 + x1^2"]]}


def remark413_row_reduced(epsilon) -> dict:
    """The ε = 0 matrix after x2 -> x2 - ε x1; equals row2 - ε row1 of remark413_matrix(ε)."""
    e = format_rational(epsilon)
    return {"weights": [1, 1, 2, 2], "variables": P1122,
            "matrix": [["x1", "y1", "y2"], [f"x2 - ({e})*x1", "y2", "x1^2"]]}


BLOCKSPECS = {
    "intro_c1": {
        "weights": [1, 1, 3, 3, 3],
        "degrees": [{"degree_index": 1, "blocks": [
            {"kind": "jordan", "size": 3, "epsilon": 0, "perturbations": ["0", "0", "x0_1^3"]},
        ]}],
    },
    "intro_c2": {
        "weights": [1, 1, 3, 3, 3],
        "degrees": [{"degree_index": 1, "blocks": [
            {"kind": "jordan", "size": 1, "epsilon": 0, "perturbations": ["x0_1^3"]},
            {"kind": "jordan", "size": 1, "epsilon": 1, "perturbations": ["x0_1^3"]},
            {"kind": "jordan", "size": 1, "epsilon": -1, "perturbations": ["x0_1^3"]},
        ]}],
    },
    "example417": {
        "weights": [1, 1, 1, 2, 2, 2, 4, 4, 4],
        "degrees": [
            {"degree_index": 1, "blocks": [
                {"kind": "jordan", "size": 3, "epsilon": 0, "perturbations": ["0", "0", "x0_1^2"]},
            ]},
            {"degree_index": 2, "blocks": [
                {"kind": "jordan", "size": 3, "epsilon": 1,
                 "perturbations": ["x1_1^2", "0", "x0_1^4 + x1_1^2"]},
            ]},
        ],
    },
}

# Weighted series (s, t) -> P(1,1,2,2) of the three curves C0, C1, C2.
SERIES = {
    "phi0": ["s^2", "t^2", "s^3*t", "s*t^3"],
    "phi1": ["s^2", "s*t", "s*t^3", "t^4"],
    "phi2": ["s^3*t", "s*t^3", "s^8", "t^8"],
}

INTRO_C2_SERIES = {
    "weights": [1, 1, 3, 3, 3],
    "sections": [
        {"name": "u", "base": "t", "order": 3},
        {"name": "v", "base": "t - s", "order": 3},
        {"name": "w", "base": "t + s", "order": 3},
    ],
    "entries": ["s*u*v*w", "t*u*v*w", "s^4*(t - s)*(t + s)", "s^4*t*(t + s)", "s^4*t*(t - s)"],
}

EXAMPLE417_DISPLAY = [
    "s^2*u^3*v^3", "s*t*u^3*v^3", "t^2*u^3*v^3",
    "s^7*v^6", "s^6*t*v^6", "s^5*t^2*v^6",
    "s^11*t^6 + s^17 + s^15*v^8", "(s^10*t^6 + s^16)*v^4", "(s^9*t^6 + s^15)*v^8",
]

FIGURE_AMBIENT = "1^2,3^2,6^3"
FIGURE1_PROFILES = ((1, 3, 6, 6, 6), (3, 3, 6, 6, 6), (1, 3, 3, 6, 6))


def series_images(name: str):
    W = WeightSystem((1, 1, 2, 2))
    return [parse_polynomial(text, ["s", "t"]) for text in SERIES[name]], W


def load_preset(name: str) -> dict:
    """Any named document: an ideal, a matrix or a block spec."""
    for table in (IDEALS, MATRICES, BLOCKSPECS):
        if name in table:
            return table[name]
    raise DomainError(f"unknown preset {name!r}")


def figure5(config: Optional[Config] = None) -> dict:
    W = WeightSystem.parse(FIGURE_AMBIENT)
    rows = enumerate_scrolls(W, min_codim=2)
    header = ["dim", "profile", "degree", "display", "kReg", "wReg", "minimal"]
    table = [[row.dim, row.profile.label(), format_rational(row.degree), row.to_dict()["degree_display"],
              row.kreg, row.wreg, "yes" if row.minimal else ""] for row in rows]
    return {
        "ambient": W.label(),
        "rows": [row.to_dict() for row in rows],
        "tsv": to_tsv(header, table),
    }


def figure1(config: Optional[Config] = None) -> dict:
    W = WeightSystem.parse(FIGURE_AMBIENT)
    thresholds = [w_upper(W, i + 1) - i for i in range(1, 5)]
    tables = []
    text = []
    for columns in FIGURE1_PROFILES:
        P = Profile.from_multiset(W, columns)
        betti = betti_from_profile(P)
        report = check_wNp(betti, W, True)
        tables.append({
            "profile": P.label(),
            "betti": betti.to_dict(),
            "wNp": report.to_dict(),
        })
        text.append(f"{P.label()}\n{betti.to_text()}")
    return {
        "ambient": W.label(),
        "threshold_rows": thresholds,
        "tables": tables,
        "tsv": "\n".join(text) + "\n",
    }


def prop64(config: Optional[Config] = None) -> dict:
    W = WeightSystem((1, 3, 4, 7))
    report = profile_search(W, "4/7", config)
    ci = ideal_from_document(load_ideal_document(IDEALS["ci1347"]))
    out = report.to_dict()
    out["complete_intersection_degree"] = format_rational(degree(ci, config))
    return out


def example417(config: Optional[Config] = None) -> dict:
    spec = BlockSpec.load(BLOCKSPECS["example417"])
    series = parameterize_curve(spec).normalized()
    M = build_kw_matrix(spec)
    display = ParamSeries.from_text(spec.ambient, EXAMPLE417_DISPLAY,
                                    [sec.to_dict() for sec in series.sections])
    matches = [a == b for a, b in zip(series.canonical_entries(), display.canonical_entries())]
    return {
        "series": series.to_dict(),
        "verification": verify_parameterization(series, M, spec).to_dict(),
        "matches_display": all(matches),
    }


def example211(config: Optional[Config] = None) -> dict:
    I = ideal_from_document(load_ideal_document(IDEALS["example211"]))
    hs = hilbert_series(I, config)
    return {
        "hilbert_series": hs.to_dict(),
        "degree": format_rational(degree(I, config)),
        "reductions": [reduce_series(hs, 1, keep).to_dict() for keep in ((5, 3), (3, 2))],
    }


def example511(config: Optional[Config] = None) -> dict:
    W = WeightSystem.parse("1^4,2^4,4^4")
    out = []
    for columns in ((1, 2, 2, 2, 2, 4), (1, 1, 1, 2, 4, 4)):
        P = Profile.from_multiset(W, columns)
        out.append({"profile": P.label(), **regularities(P).to_dict()})
    return {"ambient": W.label(), "scrolls": out}


def example513(config: Optional[Config] = None) -> dict:
    c1 = Profile.from_multiset(WeightSystem.parse("1^2,3^2,6^2"), (1, 3, 3, 6, 6))
    c2 = Profile.from_multiset(WeightSystem.parse("1^2,3,6^3"), (1, 3, 6, 6, 6))
    cases = [("C1", c1), ("Y1 = 6-cone over C1", cone_profile(c1, 6)),
             ("C2", c2), ("Y2 = 3-cone over C2", cone_profile(c2, 3)),
             ("3-cone over C1", cone_profile(c1, 3)), ("1-cone over C1", cone_profile(c1, 1))]
    return {"cones": [
        {"name": name, "ambient": P.ambient.label(), "profile": P.label(), **regularities(P).to_dict()}
        for name, P in cases
    ]}


def intro_curves(config: Optional[Config] = None) -> dict:
    out = []
    for name in ("intro_c1", "intro_c2"):
        spec = BlockSpec.load(BLOCKSPECS[name])
        M = build_kw_matrix(spec)
        I = minors(M, 2)
        series = parameterize_curve(spec).normalized()
        entry = {
            "name": name,
            "degree": format_rational(degree(I, config)),
            "series": series.to_dict(),
            "verification": verify_parameterization(series, M, spec).to_dict(),
        }
        if series.trivial_roots:
            kernel = implicitize(series.binary_forms(), spec.ambient, config)
            entry["implicitization_matches"] = same_ideal(kernel, I, config)
        out.append(entry)
    return {"curves": out}


def three_curves(config: Optional[Config] = None) -> dict:
    out = []
    for name in ("phi0", "phi1", "phi2"):
        images, W = series_images(name)
        I = implicitize(images, W, config)
        res = resolution_data(I, config)
        out.append({"series": name, "degree": format_rational(degree(I, config)), **res.to_dict()})
    return {"curves": out}


def probes(config: Optional[Config] = None) -> dict:
    out = {}
    for name in ("example45_m", "example45_n", "example46", "example47_m",
                 "example47_mprime", "example47_mpp", "example421"):
        M = matrix_from_document(load_ideal_document(MATRICES[name]))
        out[name] = pseudo_1generic_probe(M, config=config).to_dict()
    for name, doc in BLOCKSPECS.items():
        out[name] = structural_1generic_check(BlockSpec.load(doc)).to_dict()
    return out


def threefold_conjecture(config: Optional[Config] = None) -> dict:
    return {"reports": [conjecture_report(m, n).to_dict()
                        for n in range(2, 9) for m in range(2, n + 1)]}


def final_remark(config: Optional[Config] = None) -> dict:
    return final_remark_check(config).to_dict()


def remark413(config: Optional[Config] = None) -> dict:
    """The Jordan parameter ε only moves the ideal by a change of coordinates."""
    def ideal_of(doc):
        return minors(matrix_from_document(load_ideal_document(doc)), 2)

    base = ideal_of(remark413_matrix(0))
    out = []
    for eps in (Fraction(1), Fraction(-1), Fraction(1, 2), Fraction(3)):
        I = ideal_of(remark413_matrix(eps))
        out.append({
            "epsilon": format_rational(eps),
            "equals_epsilon_zero": same_ideal(I, base, config),
            "equals_after_coordinate_change": same_ideal(I, ideal_of(remark413_row_reduced(eps)), config),
        })
    return {"cases": out}


REPRODUCTIONS: dict[str, Callable[[Optional[Config]], dict]] = {
    "figure5": figure5,
    "figure1": figure1,
    "prop64": prop64,
    "example417": example417,
    "example211": example211,
    "example511": example511,
    "example513": example513,
    "intro-curves": intro_curves,
    "three-curves": three_curves,
    "probes": probes,
    "conjecture": threefold_conjecture,
    "final-remark": final_remark,
    "remark413": remark413,
}


def reproduce(name: str, config: Optional[Config] = None) -> dict:
    if name not in REPRODUCTIONS:
        raise DomainError(f"unknown reproduction {name!r}; choose from {', '.join(REPRODUCTIONS)}")
    logger.debug("reproducing %s", name)
    return REPRODUCTIONS[name](config)
