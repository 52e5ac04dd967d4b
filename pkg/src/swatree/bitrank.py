"""Immutable bit vectors with constant-time rank and select over both bit values.

The directory is a two-level block/superblock layout: blocks are single
64-bit machine words, superblocks cover ``WORDS_PER_SUPERBLOCK`` words.
Rank reads one superblock counter, one in-superblock offset, and one
in-word popcount. Select binary-searches the superblock counters, scans
at most one superblock worth of offsets, and finishes with in-word bit
tricks. Positions are 1-based externally (0-based internally).
"""

from bisect import bisect_left

WORD_BITS = 64
WORDS_PER_SUPERBLOCK = 8
SUPERBLOCK_BITS = WORD_BITS * WORDS_PER_SUPERBLOCK

_WORD_MASK = (1 << WORD_BITS) - 1


def _select_in_word(word, t):
    """Position (0-based, LSB first) of the t-th set bit of word, t >= 1."""
    for _ in range(t - 1):
        word &= word - 1
    return (word & -word).bit_length() - 1


class BitVector:
    """A fixed bit string of length m with rank/select support."""

    __slots__ = ("m", "_words", "_sup1", "_off1", "_ones")

    def __init__(self, bits=""):
        if isinstance(bits, BitVector):
            bits = bits.bits()
        if not isinstance(bits, str):
            bits = "".join("1" if b else "0" for b in bits)
        if bits.strip("01"):
            raise ValueError("bit string may only contain '0' and '1'")
        self.m = len(bits)
        nwords = (self.m + WORD_BITS - 1) // WORD_BITS
        words = []
        for w in range(nwords):
            chunk = bits[w * WORD_BITS:(w + 1) * WORD_BITS]
            words.append(int(chunk[::-1], 2))
        self._words = words

        # Cumulative 1-counts: per superblock and per word within its superblock.
        sup1 = []
        off1 = []
        cum = 0
        for w in range(nwords + 1):
            if w % WORDS_PER_SUPERBLOCK == 0:
                sup1.append(cum)
            off1.append(cum - sup1[-1])
            if w < nwords:
                cum += words[w].bit_count()
        self._sup1 = sup1
        self._off1 = off1
        self._ones = cum

    # -- basic accessors ---------------------------------------------------

    def __len__(self):
        return self.m

    def count(self, alpha):
        """Total number of alpha-bits."""
        return self._ones if alpha else self.m - self._ones

    def bit(self, i):
        """The i-th bit, 1-based."""
        if not 1 <= i <= self.m:
            raise ValueError(f"bit position {i} out of range [1,{self.m}]")
        j = i - 1
        return (self._words[j >> 6] >> (j & 63)) & 1

    def bits(self):
        """The raw bit string, verbatim."""
        out = []
        for w in range(len(self._words)):
            chunk = bin(self._words[w])[2:][::-1]
            chunk += "0" * (WORD_BITS - len(chunk))
            out.append(chunk)
        return "".join(out)[: self.m]

    # -- queries -----------------------------------------------------------

    def rank(self, alpha, i):
        """Number of alpha-bits among the first i bits (i in [0, m])."""
        if not 0 <= i <= self.m:
            raise ValueError(f"rank position {i} out of range [0,{self.m}]")
        w, r = divmod(i, WORD_BITS)
        ones = self._sup1[w // WORDS_PER_SUPERBLOCK] + self._off1[w]
        if r:
            ones += (self._words[w] & ((1 << r) - 1)).bit_count()
        return ones if alpha else i - ones

    def select(self, alpha, i):
        """1-based position of the i-th alpha-bit."""
        total = self.count(alpha)
        if not 1 <= i <= total:
            raise ValueError(f"select rank {i} out of range [1,{total}] for bit {alpha}")
        if alpha:
            sb = bisect_left(self._sup1, i) - 1
            base = i - self._sup1[sb]
        else:
            lo, hi = 0, len(self._sup1) - 1
            while lo < hi:  # zeros before superblock s = bits before - ones before
                mid = (lo + hi + 1) // 2
                bits_before = min(mid * SUPERBLOCK_BITS, self.m)
                if bits_before - self._sup1[mid] < i:
                    lo = mid
                else:
                    hi = mid - 1
            sb = lo
            base = i - (min(sb * SUPERBLOCK_BITS, self.m) - self._sup1[sb])
        w = sb * WORDS_PER_SUPERBLOCK
        nwords = len(self._words)
        while True:
            word = self._words[w]
            valid = min(WORD_BITS, self.m - w * WORD_BITS)
            if alpha:
                here = word.bit_count()
            else:
                word = ~word & ((1 << valid) - 1)
                here = word.bit_count()
            if base <= here:
                return w * WORD_BITS + _select_in_word(word, base) + 1
            base -= here
            w += 1
            if w >= nwords:  # pragma: no cover - guarded by the range check above
                raise ValueError("select ran past the end of the vector")

    # -- introspection -----------------------------------------------------

    def aux_bits(self):
        """Measured size of the rank/select directory, in bits."""
        sup_width = max(1, (self.m + 1).bit_length())
        off_width = (SUPERBLOCK_BITS + 1).bit_length()
        return len(self._sup1) * sup_width + len(self._off1) * off_width

    def raw_words(self):
        """Number of 64-bit words holding the raw bits."""
        return len(self._words)


def build_bitvector(bits):
    """Build an immutable indexed bit vector from a '0'/'1' string or bit iterable."""
    return BitVector(bits)


def rank(bv, alpha, i):
    return bv.rank(alpha, i)


def select(bv, alpha, i):
    return bv.select(alpha, i)
