"""64-bit Mersenne Twister (MT19937-64), vectorized over numpy blocks."""

from __future__ import annotations

import numpy as np

_NN = 312
_MM = 156
_MATRIX_A = np.uint64(0xB5026F5AA96619E9)
_UPPER = np.uint64(0xFFFFFFFF80000000)
_LOWER = np.uint64(0x7FFFFFFF)
_MASK64 = (1 << 64) - 1
_TWO_POW_53_INV = 1.0 / 9007199254740992.0


def _twist_terms(x: np.ndarray) -> np.ndarray:
    return (x >> np.uint64(1)) ^ np.where(x & np.uint64(1), _MATRIX_A, np.uint64(0))


class MersenneTwister64:
    """MT19937-64 seeded with ``init_genrand64``.

    Output is bit-identical to the reference generator, so graphs drawn from a
    seed are the same on every platform.
    """

    def __init__(self, seed: int) -> None:
        state = [seed & _MASK64]
        for i in range(1, _NN):
            prev = state[-1]
            state.append((6364136223846793005 * (prev ^ (prev >> 62)) + i) & _MASK64)
        self._mt = np.array(state, dtype=np.uint64)
        self._buffer = np.zeros(0, dtype=np.uint64)
        self._pos = 0

    def _generate(self) -> None:
        mt = self._mt
        # i in [0, NN-MM): partner mt[i+MM] still holds the previous block
        x = (mt[: _NN - _MM] & _UPPER) | (mt[1 : _NN - _MM + 1] & _LOWER)
        mt[: _NN - _MM] = mt[_MM:] ^ _twist_terms(x)
        # i in [NN-MM, NN-1): partner mt[i-(NN-MM)] was rewritten above
        x = (mt[_NN - _MM : _NN - 1] & _UPPER) | (mt[_NN - _MM + 1 :] & _LOWER)
        mt[_NN - _MM : _NN - 1] = mt[: _MM - 1] ^ _twist_terms(x)
        x = (mt[_NN - 1 : _NN] & _UPPER) | (mt[0:1] & _LOWER)
        mt[_NN - 1 : _NN] = mt[_MM - 1 : _MM] ^ _twist_terms(x)

        y = mt.copy()
        y ^= (y >> np.uint64(29)) & np.uint64(0x5555555555555555)
        y ^= (y << np.uint64(17)) & np.uint64(0x71D67FFFEB5AB000)
        y ^= (y << np.uint64(37)) & np.uint64(0xFFF7EEE000000000)
        y ^= y >> np.uint64(43)
        self._buffer = y
        self._pos = 0

    def random_raw(self, size: int) -> np.ndarray:
        """Next ``size`` 64-bit outputs."""
        out = np.empty(size, dtype=np.uint64)
        filled = 0
        while filled < size:
            if self._pos >= self._buffer.size:
                self._generate()
            take = min(size - filled, self._buffer.size - self._pos)
            out[filled : filled + take] = self._buffer[self._pos : self._pos + take]
            self._pos += take
            filled += take
        return out

    def random(self, size: int) -> np.ndarray:
        """Next ``size`` doubles in [0, 1) with 53-bit resolution."""
        return (self.random_raw(size) >> np.uint64(11)).astype(np.float64) * _TWO_POW_53_INV
