"""Sós permutations, their Schensted shapes, and the lattice geometry that predicts them."""
from .lattice import (LatticeVector, SlopeFrame, UnitVectorFan, apply_symmetry, lattice_dump,
                      lattice_length, lattice_length_oracle, slope_frame, unit_vectors)
from .numeric import (AlphaSpec, ConvergentTable, DomainError, ExactRational, ResourceError,
                      SlowEuclidTrace, cf_expand, convergent_table, parse_alpha, slow_euclid)
from .predictor import (CrossingProfile, KPathCertificate, RescaledFrame, ShapePrediction,
                        TrivialShape, Verification, boundary_distance, construct_k_paths,
                        crossing_profile, lsvk_curve, normalized_extrema, rescaled_frame,
                        shape_prediction, verify_prediction)
from .schensted import Partition, TableauPair, arm_leg, greene_oracle, greene_table, rsk, shape
from .sosperm import (FareyInterval, Permutation, check_three_gap, enumerate_sos, farey_interval,
                      iter_sos, sos_permutation, three_gap_permutation)

__version__ = "0.1.0"
