from .rng import *
from .digest import *
