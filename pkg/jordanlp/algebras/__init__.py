from .matrix import (matrix_jordan, matrix_element, transpose_map,
                     inner_automorphism, random_unitary)
from .spin import (SpinFactor, spin_abstract, spin_system, pauli_spin_representation,
                   anticommutation_defects, tower_embed, tower_level, PAULI,
                   SIGMA_1, SIGMA_2, SIGMA_3)
from .octonion import Octonion
from .albert import AlbertAlgebra, AlbertElement, albert
from .direct_sum import DirectSumAlgebra, direct_sum
from .fixed import fixed_point_subalgebra, check_antiautomorphism
from .intrinsic import SubalgebraModel
