"""Regenerate the shipped fixture documents from library constructions.

Run from the repository root:  python tools/gen_fixtures.py
"""

import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from avglie import documents as docs
from avglie.extensions import (
    AutomorphismPair,
    ExtensionData,
    NonAbelianCocycle,
    build_extension,
)
from avglie.fields import GF, QQ
from avglie.homotopy import CrossedModule, HomotopyAveraging, TwoTermLinf
from avglie.lie import (
    AveragingLieAlgebra,
    LieAlgebra,
    Representation,
    adjoint_representation,
    double_construction,
    embedding_to_averaging,
)
from avglie.linalg import Matrix, Tensor
from avglie.multilinear import AltMap

ROOT = os.path.join(os.path.dirname(__file__), "..", "fixtures")
F2, F3 = GF(2), GF(3)


def write(name, doc):
    path = os.path.join(ROOT, name)
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(docs.dump_document(doc))
    print("wrote", name)


g2 = LieAlgebra.from_pairs(QQ, 2, {(0, 1): (0, 1)})
P_proj = Matrix(QQ, [[1, 0], [0, 0]])
g2_proj = AveragingLieAlgebra.validate(g2, P_proj)
g2_id = AveragingLieAlgebra.validate(g2, Matrix.identity(QQ, 2))

# --- paper-example fixtures -------------------------------------------------

write("identity_averaging.json", docs.averaging_doc(g2_id))

doubled2, ops2 = double_construction(g2, 2)
write("double2.json", docs.averaging_doc(AveragingLieAlgebra.validate(doubled2, ops2[0])))

doubled3, ops3 = double_construction(g2, 3)
for name, op in zip(("double3_P", "double3_Q2", "double3_Q3"), ops3):
    write(f"{name}.json", docs.averaging_doc(AveragingLieAlgebra.validate(doubled3, op)))

psi_ad = Tensor.build(QQ, (2, 2, 2), lambda i, b, j: g2.bracket.get(i, j, b))
write(
    "embedding_tensor.json",
    docs.averaging_doc(embedding_to_averaging(g2, 2, psi_ad, Matrix.identity(QQ, 2))),
)

write("adjoint_rep.json", docs.representation_doc(adjoint_representation(g2_proj)))

# Strict 2-term structure: identity chain map, bracket acting on itself.
l2_01 = Tensor.build(QQ, (2, 2, 2), lambda i, a, b: g2.bracket.get(i, a, b))
example_strict = TwoTermLinf(
    QQ, 2, 2, Matrix.identity(QQ, 2), g2.bracket, l2_01, AltMap.zero(QQ, 2, 3, 2)
)
example_ops = HomotopyAveraging(P_proj, P_proj, AltMap.zero(QQ, 2, 2, 2))
write("strict_two_term.json", docs.two_term_doc(example_strict, example_ops))

rho_ad = Tensor.build(QQ, (2, 2, 2), lambda i, a, b: g2.bracket.get(i, a, b))
crossed_adjoint = CrossedModule(g2_proj, g2_proj, Matrix.identity(QQ, 2), rho_ad)
write("crossed_adjoint.json", docs.crossed_doc(crossed_adjoint))

adjoint_cocycle = NonAbelianCocycle(
    g2_proj, g2_proj, AltMap.zero(QQ, 2, 2, 2), psi_ad, Matrix.zero(QQ, 2, 2)
)
write("cocycle_adjoint.json", docs.cocycle_doc(adjoint_cocycle))

# --- finite-field fixtures for the Wells machinery --------------------------

def dim1(field, scalar):
    return AveragingLieAlgebra.validate(
        LieAlgebra.abelian(field, 1), Matrix(field, [[scalar]])
    )


# Nonabelian total space over F3: only the identity on the quotient lifts.
gP3 = dim1(F3, 1)
hQ3 = dim1(F3, 1)
e_lie3 = LieAlgebra.from_pairs(F3, 2, {(0, 1): (0, 1)})
ext_f3 = ExtensionData.validate(
    gP3,
    hQ3,
    AveragingLieAlgebra.validate(e_lie3, Matrix.identity(F3, 2)),
    Matrix(F3, [[0], [1]]),
    Matrix(F3, [[1, 0]]),
    Matrix(F3, [[1], [0]]),
)
write("extension_f3.json", docs.extension_doc(ext_f3))
write(
    "pair_f3_identity.json",
    docs.pair_doc(gP3, hQ3, AutomorphismPair(Matrix(F3, [[1]]), Matrix(F3, [[1]]))),
)
write(
    "pair_f3_noninducible.json",
    docs.pair_doc(gP3, hQ3, AutomorphismPair(Matrix(F3, [[1]]), Matrix(F3, [[2]]))),
)

# Abelian extension over F3 with a nonzero obstruction class.
gP0 = dim1(F3, 0)
hQ0 = dim1(F3, 0)
abelian_cocycle = NonAbelianCocycle(
    gP0, hQ0, AltMap.zero(F3, 1, 2, 1), Tensor(F3, (1, 1, 1), [1]), Matrix(F3, [[1]])
)
ext_ab3 = build_extension(abelian_cocycle)
write("extension_abelian_f3.json", docs.extension_doc(ext_ab3))
write(
    "pair_abelian_f3_obstructed.json",
    docs.pair_doc(gP0, hQ0, AutomorphismPair(Matrix(F3, [[2]]), Matrix(F3, [[1]]))),
)

# Split abelian extension over F2 with everything zero.
gF2 = dim1(F2, 0)
hF2 = dim1(F2, 0)
split_cocycle = NonAbelianCocycle(
    gF2, hF2, AltMap.zero(F2, 1, 2, 1), Tensor.zero(F2, (1, 1, 1)), Matrix.zero(F2, 1, 1)
)
write("extension_split_f2.json", docs.extension_doc(build_extension(split_cocycle)))

# The F3 extension again, with the total-space basis hand-scrambled.
S = Matrix(F3, [[1, 1], [0, 1]])
Sinv = S.inverse()
scrambled_bracket = Tensor.build(
    F3,
    (2, 2, 2),
    lambda i, j, k: Sinv.matvec(ext_f3.total.algebra.bracket_vec(S.col(i), S.col(j)))[k],
)
scrambled_total = AveragingLieAlgebra.validate(
    LieAlgebra.validate(F3, 2, scrambled_bracket),
    Sinv.mul(ext_f3.total.P).mul(S),
)
write(
    "extension_f3_scrambled.json",
    docs.extension_doc(
        ExtensionData.validate(
            gP3, hQ3, scrambled_total, Sinv.mul(ext_f3.i), ext_f3.p.mul(S), None
        )
    ),
)

# Representation with a zero module: every cohomology group vanishes.
write(
    "zero_module_rep.json",
    docs.representation_doc(
        Representation.validate(
            gP3, 0, Tensor.zero(F3, (1, 0, 0)), Matrix.zero(F3, 0, 0)
        )
    ),
)

# --- curated broken fixtures -------------------------------------------------
# Each fails validation with the clause named in its file.

sym = Tensor.build(QQ, (2, 2, 2), lambda i, j, k: QQ.one if k == 0 and i != j else QQ.zero)
write(
    "broken/antisymmetry.json",
    {
        "kind": "lie_algebra",
        "field": "Q",
        "dim": 2,
        "bracket": docs.tensor_doc(sym),
    },
)

bad_jacobi = {}
bad_jacobi[(0, 1, 1)] = QQ.one  # [e1,e2] = e2
bad_jacobi[(1, 0, 1)] = -QQ.one
bad_jacobi[(1, 2, 0)] = QQ.one  # [e2,e3] = e1
bad_jacobi[(2, 1, 0)] = -QQ.one
jac = Tensor.build(QQ, (3, 3, 3), lambda i, j, k: bad_jacobi.get((i, j, k), QQ.zero))
write(
    "broken/jacobi.json",
    {"kind": "lie_algebra", "field": "Q", "dim": 3, "bracket": docs.tensor_doc(jac)},
)

bad_avg = docs.averaging_doc(g2_id)
bad_avg["P"] = docs.matrix_doc(Matrix(QQ, [[0, 0], [0, 1]]))
write("broken/averaging_eq1.json", bad_avg)

bad_rep = docs.representation_doc(adjoint_representation(g2_id))
bad_rep["Q"] = docs.matrix_doc(Matrix(QQ, [[2, 0], [0, 2]]))
write("broken/representation_chain2.json", bad_rep)

two_term_l6 = TwoTermLinf(
    QQ,
    3,
    1,
    Matrix.zero(QQ, 3, 1),
    jac,
    Tensor.zero(QQ, (3, 1, 1)),
    AltMap.zero(QQ, 3, 3, 1),
)
write("broken/two_term_L6.json", docs.two_term_doc(two_term_l6))

bad_a2 = docs.two_term_doc(example_strict, example_ops)
bad_a2["P0"] = docs.matrix_doc(Matrix(QQ, [[0, 0], [0, 1]]))
bad_a2["P1"] = docs.matrix_doc(Matrix(QQ, [[0, 0], [0, 1]]))
write("broken/two_term_A2.json", bad_a2)

g2_zero = AveragingLieAlgebra.validate(g2, Matrix.zero(QQ, 2, 2))
abelian1 = AveragingLieAlgebra.validate(LieAlgebra.abelian(QQ, 1), Matrix.zero(QQ, 1, 1))
peiffer = CrossedModule(
    g2_zero, abelian1, Matrix.zero(QQ, 1, 2), Tensor.zero(QQ, (1, 2, 2))
)
write("broken/crossed_peiffer.json", docs.crossed_doc(peiffer))

habel2 = AveragingLieAlgebra.validate(LieAlgebra.abelian(QQ, 2), Matrix.zero(QQ, 2, 2))
not_hom = Tensor.build(
    QQ,
    (2, 2, 2),
    lambda i, a, b: QQ.one if (i, a, b) in ((0, 0, 1), (1, 1, 0)) else QQ.zero,
)
cocycle_a = NonAbelianCocycle(
    g2_zero, habel2, AltMap.zero(QQ, 2, 2, 2), not_hom, Matrix.zero(QQ, 2, 2)
)
write("broken/cocycle_A.json", docs.cocycle_doc(cocycle_a))

cocycle_d = NonAbelianCocycle(
    dim1(F2, 1),
    dim1(F2, 1),
    AltMap.zero(F2, 1, 2, 1),
    Tensor(F2, (1, 1, 1), [1]),
    Matrix(F2, [[1]]),
)
write("broken/cocycle_D.json", docs.cocycle_doc(cocycle_d))

bad_exact = docs.extension_doc(ext_f3)
bad_exact["i"] = docs.matrix_doc(Matrix(F3, [[1], [0]]))
bad_exact["s"] = None
write("broken/extension_exactness.json", bad_exact)

bad_pair = docs.pair_doc(
    g2_proj,
    abelian1,
    AutomorphismPair(Matrix(QQ, [[1]]), Matrix(QQ, [[1, 0], [1, 1]])),
)
write("broken/pair_alpha_operator.json", bad_pair)
