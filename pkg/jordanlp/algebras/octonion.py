"""Octonions by Cayley-Dickson doubling,
``(a, b)(c, d) = (ac - conj(d) b, d a + b conj(c))``.

Coordinates are over ``1, i_1, ..., i_7``; the multiplication is bilinear, so
complex coordinates give the complexified octonions.
"""
import numpy as np


def _cd_conj(x: np.ndarray) -> np.ndarray:
    out = -np.array(x, copy=True)
    out[0] = x[0]
    return out


def cayley_dickson_product(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Product of two elements of the 2^m-dimensional Cayley-Dickson algebra."""
    n = len(x)
    if n == 1:
        return x * y
    h = n // 2
    a, b = x[:h], x[h:]
    c, d = y[:h], y[h:]
    return np.concatenate([
        cayley_dickson_product(a, c) - cayley_dickson_product(_cd_conj(d), b),
        cayley_dickson_product(d, a) + cayley_dickson_product(b, _cd_conj(c)),
    ])


def _multiplication_table() -> np.ndarray:
    eye = np.eye(8)
    table = np.empty((8, 8, 8))
    for i in range(8):
        for j in range(8):
            table[i, j] = cayley_dickson_product(eye[i], eye[j])
    return table


OCTONION_TABLE = _multiplication_table()
CONJ_SIGNS = np.array([1.] + [-1.] * 7)


def omul(x, y) -> np.ndarray:
    """Octonion product on coordinate arrays; broadcasts over leading axes."""
    return np.einsum('...i,...j,ijk->...k', x, y, OCTONION_TABLE)


def oconj(x) -> np.ndarray:
    return np.asarray(x) * CONJ_SIGNS


def onorm2(x) -> complex:
    """Quadratic norm ``n(x) = x conj(x)``; the bilinear sum of squares, so it
    extends polynomially to complex coordinates."""
    x = np.asarray(x)
    return np.sum(x * x, axis=-1)


class Octonion:
    __slots__ = ('coords',)

    def __init__(self, coords):
        coords = np.asarray(coords, dtype=float).reshape(-1)
        if coords.shape != (8,):
            raise ValueError(f"an octonion has 8 real coordinates, received {coords.size}")
        self.coords = coords

    def __repr__(self):
        return f"Octonion({np.round(self.coords, 6).tolist()})"

    @classmethod
    def unit(cls, i: int = 0) -> 'Octonion':
        return cls(np.eye(8)[i])

    def __add__(self, other):
        return Octonion(self.coords + other.coords)

    def __sub__(self, other):
        return Octonion(self.coords - other.coords)

    def __mul__(self, other):
        if isinstance(other, Octonion):
            return Octonion(omul(self.coords, other.coords))
        return Octonion(self.coords * other)

    __rmul__ = __mul__

    def conj(self) -> 'Octonion':
        return Octonion(oconj(self.coords))

    def norm(self) -> float:
        return float(np.linalg.norm(self.coords))

    @property
    def real(self) -> float:
        return float(self.coords[0])

    def allclose(self, other: 'Octonion', tol: float = 1e-12) -> bool:
        return np.linalg.norm(self.coords - other.coords) <= tol * max(1., self.norm())


def composition_defect(x: Octonion, y: Octonion) -> float:
    """| ||xy|| - ||x|| ||y|| |"""
    return abs((x * y).norm() - x.norm() * y.norm())


def alternativity_defect(x: Octonion, y: Octonion) -> float:
    """max of ||x(xy) - (xx)y|| and ||(yx)x - y(xx)||."""
    left = (x * (x * y) - (x * x) * y).norm()
    right = ((y * x) * x - y * (x * x)).norm()
    return max(left, right)


def moufang_defect(x: Octonion, y: Octonion, z: Octonion) -> float:
    """max over the three Moufang identities
    ``z(x(zy)) = ((zx)z)y``, ``x(z(yz)) = ((xz)y)z``, ``(zx)(yz) = (z(xy))z``."""
    m1 = (z * (x * (z * y)) - ((z * x) * z) * y).norm()
    m2 = (x * (z * (y * z)) - ((x * z) * y) * z).norm()
    m3 = ((z * x) * (y * z) - (z * (x * y)) * z).norm()
    return max(m1, m2, m3)
