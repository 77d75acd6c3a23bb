"""Exact tensors realizing the Berezinian character of GL(m|n)."""

from .errors import (DependentBasis, FormulaMismatch, GeneratorMismatch, IndexOutOfRange,
                     InhomogeneousError, NonInvertible, NotProportional, ParityViolation,
                     ParseError, ShapeMismatch, SpanViolation, SuperberError, UnsupportedShape,
                     ZeroPairing)
from .grassmann import (DEFAULT_GENERATORS, Grassmann, from_struct, from_text, gr_add,
                        gr_inverse, gr_mul, gr_parity, to_struct, to_text)
from .supermatrix import (GENERATOR_CLASSES, SuperMatrix, berezinian, g0_det, g0_inverse,
                          gen_matrix, ldu_decompose, mat_mul, random_invertible, super_inverse)
from .symtab import (Permutation, SymmetrizerElement, Tableau, column_group, hook_product,
                     lambda_g, lambda_h, mu_constant, row_group, standard_tableau,
                     young_symmetrizer)
from .supertensor import (Signature, SuperTensor, apply_symmetrizer, express_in_basis,
                          gl_action, pairing, perm_action, right_perm_action, tensor_concat)
from .canonical import (CanonicalPair, alpha, build_g, build_h, build_h_prime, dualize,
                        enumerate_canonical, star_prime, zeta, zeta_prime)
from .berezin import (BerezinTensor, RepMatrix, build_btilde, build_btilde_star,
                      build_invariant, contraction, rep_matrix, verify_theorem21)

__version__ = "0.1.0"
