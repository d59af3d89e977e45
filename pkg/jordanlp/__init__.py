import warnings
warnings.simplefilter(action='ignore', category=FutureWarning)

from .core import (JordanAlgebra, JordanElement, StateFunctional, jordan_product,
                   involution, evaluate_state, phi_x)
from .lp_norms import lp_norm, iochum_norm
from .interp import CoupleSpec, BracketBudget, NormBracket, bracket
from .expect import conditional_expectation, canonical_projection, verify_expectation
from .sampling import generate_element
from .report import VerificationReport
from .models import CampaignModel, run_campaign
