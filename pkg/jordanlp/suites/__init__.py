from .base import CheckSuite, BracketSuite
from .axioms import AxiomSuite
from .calculus import CalculusSuite
from .lp import LpSuite
from .holder import HolderSuite
from .duality import DualitySuite
from .expectation import ExpectationSuite
from .interp import InterpSuite
from .embedding import EmbeddingSuite
from .ricard_xu import RicardXuSuite
from .iochum import IochumSuite
from .independence import IndependenceSuite

SUITES = {
    cls.SUITE: cls for cls in (
        AxiomSuite, CalculusSuite, LpSuite, HolderSuite, DualitySuite, ExpectationSuite,
        InterpSuite, EmbeddingSuite, RicardXuSuite, IochumSuite, IndependenceSuite)
}
