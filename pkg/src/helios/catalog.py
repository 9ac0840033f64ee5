"""Transcribed data for the five spline (multi)wavelet families.

Masks, analytic refinable functions, boundary generators, printed two-scale
relations, matching-filter jets and the per-level set layouts.  Rational
entries are kept as strings and parsed to ``Fraction`` once; the text dump in
:func:`dump_catalog` exists so the transcription can be diffed by hand.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

CATALOG_VERSION = 1
FAMILIES = ("b3", "b4", "sr3", "hmt", "r3")


def _q(s) -> Fraction:
    return Fraction(str(s).replace(" ", ""))


def _mask(r: int, lo: int, taps: list) -> "Mask":
    mats = []
    for t in taps:
        if r == 1:
            mats.append(((_q(t),),))
        else:
            mats.append(tuple(tuple(_q(v) for v in row) for row in t))
    return Mask(lo, tuple(mats))


@dataclass(frozen=True)
class Mask:
    """Finitely supported sequence of r x r matrices ``taps[k - lo]``."""

    lo: int
    taps: tuple

    @property
    def hi(self) -> int:
        return self.lo + len(self.taps) - 1

    @property
    def r(self) -> int:
        return len(self.taps[0])

    def array(self) -> np.ndarray:
        return np.array([[[float(v) for v in row] for row in t] for t in self.taps])

    def __getitem__(self, k: int) -> np.ndarray:
        if k < self.lo or k > self.hi:
            return np.zeros((self.r, self.r))
        return self.array()[k - self.lo]

    def checksum(self) -> Fraction:
        return sum((v for t in self.taps for row in t for v in row), Fraction(0))


@dataclass(frozen=True)
class Relation:
    """A printed two-scale expansion.

    ``boundary`` holds ``(generator name, coefficient)`` pairs meaning
    ``coef * g(2.)``; ``interior`` holds ``(shift, row)`` pairs meaning
    ``sum_l row[l] * phi^l(2. - shift)``.
    """

    boundary: tuple = ()
    interior: tuple = ()


@dataclass(frozen=True)
class FamilySpec:
    family_id: str
    r: int
    J0_min: int
    a: Mask
    b: Mask
    a_dual: Mask
    b_dual: Mask
    # pieces[l] = (breaks, ascending global polynomial coefficients per piece)
    phi_pieces: tuple
    phi_hat0: tuple
    phi_dual_hat0: tuple
    sr: int
    # v^(n)(0) and dual jets as complex row vectors; None when not printed
    jets: tuple | None
    jets_dual: tuple | None
    # left scaling generators: name -> ((coef, component, shift), ...)
    # meaning (sum coef * phi^component(. - shift)) restricted to [0, inf)
    left_phi: dict
    # printed relations for the left scaling generators
    phi_relations: dict
    # left wavelets: name -> Relation (these are definitions)
    left_psi: dict
    # set layout
    phi_x_left: tuple
    phi_interior: tuple  # (k_lo, k_hi_offset): k_lo <= k <= 2**j - k_hi_offset
    phi_x_right: tuple  # ((left name, sign), ...) mirrored
    psi_x_left: tuple
    psi_interior: tuple
    psi_x_right: tuple
    psi_y_right: tuple  # replaces psi_x_right in the y variant, free one last
    psi_extra: tuple = ()  # extra interior (k, component) entries
    free_phi: str = "L"
    free_psi: str = "L"
    notes: tuple = field(default_factory=tuple)


# ---------------------------------------------------------------- b3
_B3 = FamilySpec(
    family_id="b3",
    r=1,
    J0_min=2,
    a=_mask(1, -1, ["1/8", "3/8", "3/8", "1/8"]),
    b=_mask(1, -3, ["3/64", "9/64", "-7/64", "-45/64", "45/64", "7/64", "-9/64", "-3/64"]),
    a_dual=_mask(1, -3, ["3/64", "-9/64", "-7/64", "45/64", "45/64", "-7/64", "-9/64", "3/64"]),
    b_dual=_mask(1, -1, ["1/8", "-3/8", "3/8", "-1/8"]),
    phi_pieces=(
        ((-1, 0, 1, 2), (("1/2", "1", "1/2"), ("1/2", "1", "-1"), ("2", "-2", "1/2"))),
    ),
    phi_hat0=("1",),
    phi_dual_hat0=("1",),
    sr=3,
    jets=None,
    jets_dual=None,
    left_phi={
        "L": ((1, 0, -1), (1, 0, 0)),
        "bc": (("-1/2", 0, -1), ("1/2", 0, 0)),
    },
    phi_relations={
        "L": Relation(boundary=(("L", 1),), interior=((1, ("3/4",)), (2, ("1/4",)))),
        "bc": Relation(boundary=(("bc", "1/2"),), interior=((1, ("3/8",)), (2, ("1/8",)))),
    },
    left_psi={
        "L": Relation(boundary=(("L", 1),),
                      interior=((1, ("-11/4",)), (2, ("31/12",)), (3, ("-5/6",)))),
        "bc1": Relation(boundary=(("bc", 2),),
                        interior=((1, ("-47/30",)), (2, ("13/10",)), (3, ("-2/5",)))),
        "bc2": Relation(interior=((1, ("2",)), (2, ("-6",)), (3, ("6",)), (4, ("-2",)))),
    },
    phi_x_left=("bc",),
    phi_interior=(1, 2),
    phi_x_right=(("bc", 1),),
    psi_x_left=("bc1", "bc2"),
    psi_interior=(2, 3),
    psi_x_right=(("bc1", 1), ("bc2", 1)),
    psi_y_right=(("bc1", 1), ("L", 1)),
)

# ---------------------------------------------------------------- b4
_B4 = FamilySpec(
    family_id="b4",
    r=1,
    J0_min=3,
    a=_mask(1, -2, ["1/16", "1/4", "3/8", "1/4", "1/16"]),
    b=_mask(1, -6, ["-1/128", "-1/32", "-1/256", "9/64", "31/256", "-11/32", "-23/64", "31/32",
                    "-23/64", "-11/32", "31/256", "9/64", "-1/256", "-1/32", "-1/128"]),
    a_dual=_mask(1, -7, ["1/128", "-1/32", "1/256", "9/64", "-31/256", "-11/32", "23/64", "31/32",
                         "23/64", "-11/32", "-31/256", "9/64", "1/256", "-1/32", "1/128"]),
    b_dual=_mask(1, -1, ["1/16", "-1/4", "3/8", "-1/4", "1/16"]),
    phi_pieces=(
        ((-2, -1, 0, 1, 2),
         (("8/6", "12/6", "6/6", "1/6"), ("4/6", "0", "-1", "-1/2"),
          ("4/6", "0", "-1", "1/2"), ("8/6", "-12/6", "6/6", "-1/6"))),
    ),
    phi_hat0=("1",),
    phi_dual_hat0=("1",),
    sr=4,
    jets=None,
    jets_dual=None,
    left_phi={
        "L": ((1, 0, -1), (1, 0, 0), (1, 0, 1)),
        "bc1": ((-1, 0, -1), (1, 0, 1)),
        "bc2": (("2/3", 0, -1), ("-1/3", 0, 0), ("2/3", 0, 1)),
    },
    phi_relations={
        "L": Relation(boundary=(("L", 1),),
                      interior=((2, ("7/8",)), (3, ("1/2",)), (4, ("1/8",)))),
        "bc1": Relation(boundary=(("bc1", "1/2"),),
                        interior=((2, ("3/4",)), (3, ("1/2",)), (4, ("1/8",)))),
        "bc2": Relation(boundary=(("bc2", "1/4"),),
                        interior=((2, ("11/24",)), (3, ("1/3",)), (4, ("1/12",)))),
    },
    left_psi={
        "L": Relation(
            boundary=(("L", 1), ("bc1", "-527/69"), ("bc2", "278/23")),
            interior=((2, ("-61/69",)), (3, ("22339/43470",)), (4, ("-47113/173880",)),
                      (5, ("3832/21735",)), (6, ("-18509/173880",)), (7, ("2/69",)))),
        "bc1": Relation(interior=((3, ("1/8",)), (4, ("-1/2",)), (5, ("3/4",)),
                                  (6, ("-1/2",)), (7, ("1/8",)))),
        "bc2": Relation(interior=((2, ("1/8",)), (3, ("-1/2",)), (4, ("3/4",)),
                                  (5, ("-1/2",)), (6, ("1/8",)))),
        "bc3": Relation(
            boundary=(("bc1", "-31/2500"), ("bc2", "147/5000")),
            interior=((2, ("-381/80000",)), (3, ("4517/3600000",)), (4, ("-169/1800000",)),
                      (5, ("1757/1800000",)), (6, ("-3493/3600000",)), (7, ("21/80000",)))),
        "bc4": Relation(
            boundary=(("bc1", "6/125"), ("bc2", "-307/2500")),
            interior=((2, ("1869/80000",)), (3, ("3453/2800000",)), (4, ("-661/175000",)),
                      (5, ("-8663/1400000",)), (6, ("-29521/2800000",)), (7, ("351/16000",)),
                      (8, ("-69/8000",)))),
        "bc5": Relation(
            boundary=(("bc1", "11/1000"), ("bc2", "-4/125")),
            interior=((2, ("69/5000",)), (3, ("-1361/126000",)), (4, ("-6931/1260000",)),
                      (5, ("12163/630000",)), (6, ("-9253/630000",)), (7, ("19/5000",)))),
        "bc6": Relation(
            boundary=(("bc1", "63/1000"), ("bc2", "129/1000")),
            interior=((2, ("-993/2500",)), (3, ("18497/70000",)), (4, ("64081/140000",)),
                      (5, ("-6441/14000",)), (6, ("-17351/35000",)), (7, ("1913/2500",)),
                      (8, ("-641/2500",)))),
    },
    phi_x_left=("bc1", "bc2"),
    phi_interior=(2, 2),
    phi_x_right=(("bc1", 1), ("bc2", 1)),
    psi_x_left=("bc1", "bc2", "bc3", "bc4"),
    psi_interior=(4, 5),
    psi_x_right=(("bc1", 1), ("bc2", 1), ("bc3", 1), ("bc4", 1)),
    psi_y_right=(("bc1", 1), ("bc5", 1), ("bc6", 1), ("L", 1)),
)

# ---------------------------------------------------------------- sr3
_SR3 = FamilySpec(
    family_id="sr3",
    r=2,
    J0_min=1,
    a=_mask(2, -2, [
        [["0", "-1/16"], ["0", "0"]],
        [["0", "3/16"], ["0", "0"]],
        [["1/2", "3/16"], ["0", "3/8"]],
        [["0", "-1/16"], ["1/2", "3/8"]],
    ]),
    b=_mask(2, -2, [
        [["0", "-1/32"], ["0", "-1/8"]],
        [["3/8", "-9/32"], ["-3/2", "15/8"]],
        [["1/2", "-9/32"], ["0", "-15/8"]],
        [["3/8", "-1/32"], ["3/2", "1/8"]],
    ]),
    a_dual=_mask(2, -2, [
        [["3/32", "-1/8"], ["0", "0"]],
        [["-3/16", "3/8"], ["0", "0"]],
        [["11/16", "3/8"], ["-3/32", "3/8"]],
        [["-3/16", "-1/8"], ["7/16", "3/8"]],
        [["3/32", "0"], ["-3/32", "0"]],
    ]),
    b_dual=_mask(2, -2, [
        [["-3/32", "1/8"], ["3/128", "-1/32"]],
        [["3/16", "-3/8"], ["-3/64", "3/32"]],
        [["5/16", "-3/8"], ["0", "-3/32"]],
        [["3/16", "1/8"], ["3/64", "1/32"]],
        [["-3/32", "0"], ["-3/128", "0"]],
    ]),
    phi_pieces=(
        ((-1, 0, 1), (("1", "3", "2"), ("1", "-3", "2"))),
        ((0, 1), (("0", "4", "-4"),)),
    ),
    phi_hat0=("1/3", "2/3"),
    phi_dual_hat0=("1", "1"),
    sr=3,
    jets=(("1", "1"), ("0", "1/2j"), ("0", "-1/4")),
    jets_dual=(("1/3", "2/3"), ("0", "1/3j"), ("1/30", "-1/5")),
    left_phi={
        "L": ((1, 0, 0),),
        "bc": ((1, 1, 0),),
    },
    phi_relations={
        "L": Relation(boundary=(("L", 1), ("bc", "3/8")), interior=((1, ("0", "-1/8")),)),
        "bc": Relation(boundary=(("bc", "3/4"),), interior=((1, ("1", "3/4")),)),
    },
    left_psi={
        "L": Relation(boundary=(("L", 1), ("bc", "-9/16")), interior=((1, ("3/4", "-1/16")),)),
        "bc": Relation(boundary=(("bc", 1),),
                       interior=((1, ("-2121/512", "657/4096")), (2, ("3877/1024", "-4023/4096")))),
    },
    phi_x_left=("bc",),
    phi_interior=(1, 1),
    phi_x_right=(),
    psi_x_left=("bc",),
    psi_interior=(1, 1),
    psi_x_right=(("bc", 1),),
    psi_y_right=(("L", 1),),
)

# ---------------------------------------------------------------- hmt
_HMT = FamilySpec(
    family_id="hmt",
    r=2,
    J0_min=2,
    a=_mask(2, -1, [
        [["1/4", "3/8"], ["-1/16", "-1/16"]],
        [["1/2", "0"], ["0", "1/4"]],
        [["1/4", "-3/8"], ["1/16", "-1/16"]],
    ]),
    b=_mask(2, -2, [
        [["0", "0"], ["2/97", "24/679"]],
        [["-1/2", "-15/4"], ["77/1164", "2921/2716"]],
        [["1", "0"], ["0", "1"]],
        [["-1/2", "15/4"], ["-77/1164", "2921/2716"]],
        [["0", "0"], ["-2/97", "24/679"]],
    ]),
    a_dual=_mask(2, -4, [
        [["-13/2432", "-91/29184"], ["3/152", "7/608"]],
        [["39/2432", "13/3648"], ["-9/152", "-1/76"]],
        [["-1/12", "-1699/43776"], ["679/1216", "4225/14592"]],
        [["569/2432", "647/10944"], ["-1965/1216", "-37/96"]],
        [["2471/3648", "0"], ["0", "7291/7296"]],
        [["569/2432", "-647/10944"], ["1965/1216", "-37/96"]],
        [["-1/12", "1699/43776"], ["-679/1216", "4225/14592"]],
        [["39/2432", "-13/3648"], ["9/152", "-1/76"]],
        [["-13/2432", "91/29184"], ["-3/152", "7/608"]],
    ]),
    b_dual=_mask(2, -4, [
        [["-1/4864", "-7/58368"], ["0", "0"]],
        [["3/4864", "1/7296"], ["0", "0"]],
        [["1/24", "2161/87552"], ["-679/4864", "-4753/58368"]],
        [["-611/4864", "-605/21888"], ["2037/4864", "679/7296"]],
        [["1219/7296", "0"], ["0", "7469/29184"]],
        [["-611/4864", "605/21888"], ["-2037/4864", "679/7296"]],
        [["1/24", "-2161/87552"], ["679/4864", "-4753/58368"]],
        [["3/4864", "-1/7296"], ["0", "0"]],
        [["-1/4864", "7/58368"], ["0", "0"]],
    ]),
    phi_pieces=(
        ((-1, 0, 1), (("1", "0", "-3", "-2"), ("1", "0", "-3", "2"))),
        ((-1, 0, 1), (("0", "1", "2", "1"), ("0", "1", "-2", "1"))),
    ),
    phi_hat0=("1", "0"),
    phi_dual_hat0=("1", "0"),
    sr=4,
    jets=(("1", "0"), ("0", "1j"), ("0", "0"), ("0", "0")),
    jets_dual=(("1", "0"), ("0", "1/15j"), ("-2/15", "0"), ("0", "-2/105j")),
    left_phi={
        "L": ((1, 0, 0),),
        "bc": ((1, 1, 0),),
    },
    phi_relations={
        "L": Relation(boundary=(("L", 1),), interior=((1, ("1/2", "-3/4")),)),
        "bc": Relation(boundary=(("bc", "1/2"),), interior=((1, ("1/8", "-1/8")),)),
    },
    left_psi={
        "L": Relation(boundary=(("L", 1), ("bc", "-27/4")),
                      interior=((1, ("4139/26352", "215/144")), (2, ("-623/6588", "-119/1098")),
                                (3, ("0", "27/122")))),
        "bc1": Relation(boundary=(("bc", "-21/2"),),
                        interior=((1, ("17/24", "-5847/488")), (2, ("115/366", "233/61")),
                                  (3, ("-9/61", "0")))),
        "bc2": Relation(boundary=(("bc", "93/16"),),
                        interior=((1, ("-235/2112", "30351/3904")), (2, ("8527/32208", "3571/488")),
                                  (3, ("-428/671", "195/44")))),
        "bc3": Relation(boundary=(("bc", 1),),
                        interior=((1, ("-41/144", "-121/488")), (2, ("341/2196", "-1987/732")),
                                  (3, ("45/976", "0")))),
    },
    phi_x_left=("bc",),
    phi_interior=(1, 1),
    phi_x_right=(("bc", -1),),
    psi_x_left=("bc1", "bc2", "bc3"),
    psi_interior=(2, 2),
    psi_x_right=(("bc1", 1), ("bc2", 1), ("bc3", 1)),
    psi_y_right=(("bc1", 1), ("bc2", 1), ("L", 1)),
)

# ---------------------------------------------------------------- r3
_R3 = FamilySpec(
    family_id="r3",
    r=3,
    J0_min=1,
    a=_mask(3, -2, [
        [["0", "1/32", "0"], ["0", "0", "0"], ["0", "0", "0"]],
        [["-1/32", "0", "5/32"], ["0", "0", "0"], ["0", "0", "0"]],
        [["1/2", "5/32", "0"], ["0", "15/32", "1/2"], ["0", "-5/32", "0"]],
        [["-1/32", "0", "1/32"], ["9/32", "0", "-5/32"], ["9/32", "1/2", "15/32"]],
    ]),
    b=_mask(3, -2, [
        [["0", "1/64", "-125/6032"], ["0", "0", "0"], ["0", "0", "0"]],
        [["-4335/24128", "365/2262", "-13453/72384"], ["-1/4", "13/36", "-11/18"], ["0", "0", "0"]],
        [["2703/6032", "-13453/72384", "365/2262"], ["0", "11/18", "-13/36"], ["0", "1/64", "1/8"]],
        [["-4335/24128", "-125/6032", "1/64"], ["1/4", "0", "0"], ["-27/64", "1/8", "1/64"]],
    ]),
    a_dual=_mask(3, -2, [
        [["-33/512", "47/512", "7/64"], ["11/3392", "-47/10176", "-7/1272"],
         ["1375/461312", "-5875/1383936", "-875/172992"]],
        [["-17/256", "-209/512", "259/512"], ["17/5088", "209/10176", "-259/10176"],
         ["125/40704", "26125/1383936", "-32375/1383936"]],
        [["85/128", "259/512", "-209/512"], ["-211337/4151808", "1032671/4151808", "161873/259488"],
         ["34211/1037952", "-371405/4151808", "193255/4151808"]],
        [["-17/256", "7/64", "47/512"], ["2775/13568", "193255/4151808", "-371405/4151808"],
         ["2775/13568", "161873/259488", "1032671/4151808"]],
        [["-33/512", "0", "0"], ["34211/1037952", "-32375/1383936", "26125/1383936"],
         ["-211337/4151808", "-259/10176", "209/10176"]],
        [["0", "0", "0"], ["125/40704", "-875/172992", "-5875/1383936"],
         ["17/5088", "-7/1272", "-47/10176"]],
        [["0", "0", "0"], ["1375/461312", "0", "0"], ["11/3392", "0", "0"]],
    ]),
    b_dual=_mask(3, -2, [
        [["4147/57664", "-17719/172992", "-2639/21624"], ["33/901", "-47/901", "-56/901"],
         ["0", "0", "0"]],
        [["377/5088", "78793/172992", "-97643/172992"], ["2/53", "209/901", "-259/901"],
         ["0", "0", "0"]],
        [["16211/43248", "-97643/172992", "78793/172992"], ["0", "259/901", "-209/901"],
         ["-128/477", "29/53", "12/53"]],
        [["377/5088", "-2639/21624", "-17719/172992"], ["-2/53", "56/901", "47/901"],
         ["-482/477", "12/53", "29/53"]],
        [["4147/57664", "0", "0"], ["-33/901", "0", "0"], ["-128/477", "0", "0"]],
    ]),
    phi_pieces=(
        ((-1, 0, 1), (("8/5", "44/5", "72/5", "36/5"), ("8/5", "-44/5", "72/5", "-36/5"))),
        ((0, 1), (("0", "72/5", "-36", "108/5"),)),
        ((0, 1), (("0", "-36/5", "144/5", "-108/5"),)),
    ),
    phi_hat0=("2/5", "3/5", "3/5"),
    phi_dual_hat0=("5/8", "5/8", "5/8"),
    sr=4,
    jets=(("5/8", "5/8", "5/8"), ("0", "5/24j", "5/12j"), ("0", "-5/72", "-5/18"),
          ("0", "-5/216j", "-5/27j")),
    jets_dual=(("2/5", "3/5", "3/5"), ("0", "3/25j", "12/25j"), ("-2/75", "0", "-9/25"),
               ("0", "6/175j", "-48/175j")),
    left_phi={
        "L": (("5/8", 0, 0),),
        "bc1": ((1, 1, 0),),
        "bc2": ((1, 2, 0),),
    },
    phi_relations={
        "L": Relation(boundary=(("L", 1), ("bc1", "25/128")),
                      interior=((1, ("-5/128", "0", "5/128")),)),
        "bc1": Relation(boundary=(("bc1", "15/16"), ("bc2", 1)),
                        interior=((1, ("9/16", "0", "-5/16")),)),
        "bc2": Relation(boundary=(("bc1", "-5/16"),),
                        interior=((1, ("9/16", "1", "15/16")),)),
    },
    left_psi={
        "L": Relation(boundary=(("L", 1), ("bc1", "-182143/577558"), ("bc2", "-13249/577558")),
                      interior=((1, ("3245513/4620464", "-20201527/62376264", "-900809/62376264")),)),
        "bc": Relation(boundary=(("bc1", "819/3200000"), ("bc2", "-40281/30800000")),
                       interior=((1, ("703/3200000", "113269/92400000", "58049/147840000")),
                                 (2, ("-47/70000", "-29/56250", "619/2475000")))),
    },
    phi_x_left=("bc1", "bc2"),
    phi_interior=(1, 1),
    phi_x_right=(),
    psi_x_left=("bc",),
    psi_interior=(1, 1),
    psi_x_right=(("bc", 1),),
    psi_y_right=(("L", 1),),
    psi_extra=((0, 2),),
    notes=("printed wavelet set is one short of the two-scale count; psi^3_{j;0} is added",),
)

_FAMILIES = {f.family_id: f for f in (_B3, _B4, _SR3, _HMT, _R3)}

# Recombination of the cubic B-spline left generators (used for large wavenumbers).
B4_RECOMBINATION = {
    "bc1": (("bc1", "1"), ("bc2", "85/100")),
    "bc2": (("bc1", "-1/2"), ("bc2", "11/10")),
    "L": (("L", "1"), ("bc1", "-13/14"), ("bc2", "8/14")),
}

# Table sizes used by the experiment driver (kappa = 4 pi, 8 pi, 16 pi tables).
TABLE_J0 = {
    ("sr3", 4): 2, ("hmt", 4): 4, ("r3", 4): 2,
    ("sr3", 8): 3, ("hmt", 8): 4, ("r3", 8): 3,
    ("sr3", 16): 4, ("hmt", 16): 4, ("r3", 16): 3,
    ("b3", 32): 6, ("b4", 32): 6, ("sr3", 32): 5,
}


def get_family(family_id: str) -> FamilySpec:
    try:
        return _FAMILIES[family_id]
    except KeyError:
        raise KeyError(f"unknown family {family_id!r}; expected one of {FAMILIES}") from None


def parse_complex(s) -> complex:
    s = str(s)
    if s.endswith("j"):
        return complex(0.0, float(_q(s[:-1])))
    return complex(float(_q(s)), 0.0)


def dump_catalog() -> str:
    """Versioned plain-text dump of every mask as exact rationals."""
    lines = [f"# helios family catalog v{CATALOG_VERSION}"]
    for fid in FAMILIES:
        f = _FAMILIES[fid]
        lines.append(f"family {fid} r={f.r} J0_min={f.J0_min} sr={f.sr}")
        for name in ("a", "b", "a_dual", "b_dual"):
            m = getattr(f, name)
            lines.append(f"  mask {name} [{m.lo},{m.hi}] checksum={m.checksum()}")
            for k, t in zip(range(m.lo, m.hi + 1), m.taps):
                rows = "; ".join(" ".join(str(v) for v in row) for row in t)
                lines.append(f"    {k}: {rows}")
    return "\n".join(lines) + "\n"
