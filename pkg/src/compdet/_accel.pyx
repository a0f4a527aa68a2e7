# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
# distutils: extra_compile_args = -O3
"""Compiled inner loops for sparse polynomial arithmetic.

Two tiers, both exact and both mirroring the pure-Python fallbacks in
polynomials.py:

* object kernels (mul_terms / fused_terms / div_update) work on the
  packed-integer term dicts with arbitrary Python ints and cut only
  interpreter overhead;
* native kernels (mul_i64 / fused_i64 / exact_div_i64) run entirely on
  C integers -- monomial keys in 64 bits, coefficients accumulated in
  128 bits -- and return None whenever an input or a guard bound does
  not fit, in which case the caller retries with the object path.
"""

from cpython.dict cimport PyDict_DelItem, PyDict_GetItem, PyDict_Next, PyDict_SetItem
from cpython.list cimport PyList_GET_ITEM, PyList_GET_SIZE
from cpython.object cimport PyObject
from libcpp.queue cimport priority_queue
from libcpp.vector cimport vector

cdef extern from "Python.h":
    long long PyLong_AsLongLongAndOverflow(object, int*) except? -1
    unsigned long long PyLong_AsUnsignedLongLongMask(object) except? -1
    object PyLong_FromLongLong(long long)

cdef extern from *:
    ctypedef long long i128 "__int128"

ctypedef unsigned long long u64
ctypedef long long i64

cdef u64 _EMPTY = <u64>0xFFFFFFFFFFFFFFFFULL


# ---------------------------------------------------------------------------
# object-dict kernels (arbitrary-precision fallback tier)
# ---------------------------------------------------------------------------

def mul_terms(dict a, dict b):
    """Term dict of a * b, zeros not stripped."""
    cdef dict res = {}
    cdef list items
    cdef tuple it
    cdef Py_ssize_t i, nb
    cdef PyObject* p
    cdef object m1, c1, key, cc
    if len(a) > len(b):
        a, b = b, a
    items = list(b.items())
    nb = PyList_GET_SIZE(items)
    for m1, c1 in a.items():
        for i in range(nb):
            it = <tuple>PyList_GET_ITEM(items, i)
            key = m1 + <object>it[0]
            cc = c1 * <object>it[1]
            p = PyDict_GetItem(res, key)
            if p is NULL:
                PyDict_SetItem(res, key, cc)
            else:
                PyDict_SetItem(res, key, <object>p + cc)
    return res


def fused_terms(dict a, dict b, dict c, dict d):
    """Term dict of a*b - c*d, zeros not stripped."""
    cdef dict res = mul_terms(a, b)
    cdef dict small = c
    cdef dict big = d
    cdef list items
    cdef tuple it
    cdef Py_ssize_t i, nb
    cdef PyObject* p
    cdef object m1, c1, key, cc
    if len(small) > len(big):
        small, big = big, small
    items = list(big.items())
    nb = PyList_GET_SIZE(items)
    for m1, c1 in small.items():
        for i in range(nb):
            it = <tuple>PyList_GET_ITEM(items, i)
            key = m1 + <object>it[0]
            cc = c1 * <object>it[1]
            p = PyDict_GetItem(res, key)
            if p is NULL:
                PyDict_SetItem(res, key, -cc)
            else:
                PyDict_SetItem(res, key, <object>p - cc)
    return res


def div_update(dict rem, object qkey, object qc, list divisor):
    """One long-division step: rem -= qc * t^qkey * divisor (non-lead part)."""
    cdef tuple it
    cdef Py_ssize_t i, nd = PyList_GET_SIZE(divisor)
    cdef PyObject* p
    cdef object tkey, cc, s
    for i in range(nd):
        it = <tuple>PyList_GET_ITEM(divisor, i)
        tkey = qkey + <object>it[0]
        cc = qc * <object>it[1]
        p = PyDict_GetItem(rem, tkey)
        if p is NULL:
            PyDict_SetItem(rem, tkey, -cc)
        else:
            s = <object>p - cc
            if s:
                PyDict_SetItem(rem, tkey, s)
            else:
                PyDict_DelItem(rem, tkey)


# ---------------------------------------------------------------------------
# native kernels
# ---------------------------------------------------------------------------

cdef inline u64 _mix(u64 x) nogil:
    x ^= x >> 33
    x *= <u64>0xFF51AFD7ED558CCDULL
    x ^= x >> 33
    x *= <u64>0xC4CEB9FE1A85EC53ULL
    x ^= x >> 33
    return x


cdef inline int _bitlen64(u64 v) nogil:
    cdef int n = 0
    while v:
        v >>= 1
        n += 1
    return n


cdef inline int _bitlen128(i128 v) nogil:
    if v < 0:
        v = -v
    cdef u64 hi = <u64>(v >> 64)
    if hi:
        return 64 + _bitlen64(hi)
    return _bitlen64(<u64>v)


cdef class _Map:
    """Open-addressing map u64 key -> i128 value; slots are never reused."""
    cdef vector[u64] keys
    cdef vector[i128] vals
    cdef u64 mask
    cdef size_t used

    cdef void init(self, size_t cap):
        cdef size_t c = 64
        while c < cap:
            c <<= 1
        self.keys.assign(c, _EMPTY)
        self.vals.assign(c, 0)
        self.mask = c - 1
        self.used = 0

    cdef void _grow(self):
        cdef vector[u64] ok = self.keys
        cdef vector[i128] ov = self.vals
        cdef size_t i, n = ok.size()
        self.init((self.mask + 1) * 2)
        for i in range(n):
            if ok[i] != _EMPTY and ov[i] != 0:
                self.add(ok[i], ov[i])

    cdef bint add(self, u64 key, i128 delta):
        """Accumulate; True iff the stored value went from zero to nonzero."""
        cdef u64 idx = _mix(key) & self.mask
        cdef i128 prev
        while True:
            if self.keys[idx] == key:
                prev = self.vals[idx]
                self.vals[idx] = prev + delta
                return prev == 0 and prev + delta != 0
            if self.keys[idx] == _EMPTY:
                self.keys[idx] = key
                self.vals[idx] = delta
                self.used += 1
                if self.used * 4 > (self.mask + 1) * 3:
                    self._grow()
                return delta != 0
            idx = (idx + 1) & self.mask

    cdef i128 get(self, u64 key):
        cdef u64 idx = _mix(key) & self.mask
        while True:
            if self.keys[idx] == key:
                return self.vals[idx]
            if self.keys[idx] == _EMPTY:
                return 0
            idx = (idx + 1) & self.mask

    cdef void zero(self, u64 key):
        cdef u64 idx = _mix(key) & self.mask
        while self.keys[idx] != _EMPTY:
            if self.keys[idx] == key:
                self.vals[idx] = 0
                return
            idx = (idx + 1) & self.mask


cdef object _i128_to_py(i128 v):
    if v >= <i128>(-0x8000000000000000LL) and v <= <i128>0x7FFFFFFFFFFFFFFFLL:
        return PyLong_FromLongLong(<i64>v)
    cdef i64 hi = <i64>(v >> 64)
    cdef u64 lo = <u64>v
    return (PyLong_FromLongLong(hi) << 64) + lo


cdef bint _load(dict d, vector[u64]* keys, vector[i128]* vals, int* maxbits):
    """Extract (key, coeff) arrays; False if anything exceeds 126 bits."""
    cdef PyObject* k
    cdef PyObject* v
    cdef Py_ssize_t pos = 0
    cdef int ov
    cdef i64 kk, hi
    cdef u64 lo
    cdef i128 cc
    cdef object vo
    cdef int mb = 0, b
    while PyDict_Next(d, &pos, &k, &v):
        if not isinstance(<object>k, int) or not isinstance(<object>v, int):
            return False
        kk = PyLong_AsLongLongAndOverflow(<object>k, &ov)
        if ov or kk < 0:
            return False
        cc = PyLong_AsLongLongAndOverflow(<object>v, &ov)
        if ov:
            vo = <object>v
            if vo.bit_length() > 126:
                return False
            hi = PyLong_AsLongLongAndOverflow(vo >> 64, &ov)
            lo = PyLong_AsUnsignedLongLongMask(vo)
            cc = ((<i128>hi) << 64) + <i128>lo
        keys.push_back(<u64>kk)
        vals.push_back(cc)
        b = _bitlen128(cc)
        if b > mb:
            mb = b
    maxbits[0] = mb
    return True


cdef inline int _ceil_log2(size_t n) nogil:
    cdef int b = 0
    cdef size_t c = 1
    while c < n:
        c <<= 1
        b += 1
    return b


cdef _mulsub(dict a, dict b, dict c, dict d):
    cdef vector[u64] ka, kb, kc, kd
    cdef vector[i128] va, vb, vc, vd
    cdef int ba = 0, bb = 0, bc = 0, bd = 0
    if not _load(a, &ka, &va, &ba) or not _load(b, &kb, &vb, &bb):
        return None
    if c is not None:
        if not _load(c, &kc, &vc, &bc) or not _load(d, &kd, &vd, &bd):
            return None
    # every product fits in 126 bits after accumulating all colliding terms
    cdef size_t hits = min(ka.size(), kb.size()) + min(kc.size(), kd.size())
    cdef int pbits = max(ba + bb, bc + bd)
    if pbits + _ceil_log2(hits + 1) + 1 > 126:
        return None
    cdef _Map tab = _Map()
    tab.init(2 * (ka.size() + kb.size() + kc.size() + kd.size()) + 64)
    cdef size_t i, j, na, nb_, nc, nd
    cdef u64 key1
    cdef i128 c1
    if ka.size() > kb.size():
        ka.swap(kb)
        va.swap(vb)
    na = ka.size()
    nb_ = kb.size()
    for i in range(na):
        key1 = ka[i]
        c1 = va[i]
        for j in range(nb_):
            tab.add(key1 + kb[j], c1 * vb[j])
    if kc.size() > kd.size():
        kc.swap(kd)
        vc.swap(vd)
    nc = kc.size()
    nd = kd.size()
    for i in range(nc):
        key1 = kc[i]
        c1 = vc[i]
        for j in range(nd):
            tab.add(key1 + kd[j], -(c1 * vd[j]))
    cdef dict res = {}
    cdef size_t cap = tab.mask + 1
    for i in range(cap):
        if tab.keys[i] != _EMPTY and tab.vals[i] != 0:
            PyDict_SetItem(res, PyLong_FromLongLong(<i64>tab.keys[i]),
                           _i128_to_py(tab.vals[i]))
    return res


def mul_i64(dict a, dict b):
    """Term dict of a * b over native ints, or None if anything won't fit."""
    return _mulsub(a, b, None, None)


def fused_i64(dict a, dict b, dict c, dict d):
    """Term dict of a*b - c*d over native ints, or None if anything won't fit."""
    return _mulsub(a, b, c, d)


def exact_div_i64(dict num, dict den, int nvars, int bits, object exc):
    """Exact quotient num / den over native ints.

    Returns the quotient term dict, or None when a value exceeds the
    native range or a coefficient quotient is non-integral (the caller
    falls back to the exact object path).  Raises `exc` when the
    division is structurally impossible in the polynomial ring.
    """
    cdef vector[u64] kn, kd
    cdef vector[i128] vn, vd
    cdef int bn = 0, bd = 0
    if not _load(num, &kn, &vn, &bn) or not _load(den, &kd, &vd, &bd):
        return None
    cdef size_t i, ndn = kd.size()
    # leading (max) term of the divisor
    cdef size_t lead_at = 0
    for i in range(1, ndn):
        if kd[i] > kd[lead_at]:
            lead_at = i
    cdef u64 lead_key = kd[lead_at]
    cdef i128 lead_c = vd[lead_at]
    cdef vector[u64] tk
    cdef vector[i128] tv
    for i in range(ndn):
        if i != lead_at:
            tk.push_back(kd[i])
            tv.push_back(vd[i])
    cdef size_t ntail = tk.size()
    cdef int logtail = _ceil_log2(ntail + 2)
    cdef u64 mask = (<u64>1 << bits) - 1
    cdef _Map rem = _Map()
    rem.init(2 * kn.size() + 64)
    cdef priority_queue[u64] pq
    for i in range(kn.size()):
        if rem.add(kn[i], vn[i]):
            pq.push(kn[i])
    cdef vector[u64] qkeys
    cdef vector[i128] qvals
    cdef u64 key, qkey
    cdef i128 val, qc
    cdef int f
    while not pq.empty():
        key = pq.top()
        pq.pop()
        val = rem.get(key)
        if val == 0:
            continue
        for f in range(nvars):
            if ((key >> (bits * f)) & mask) < ((lead_key >> (bits * f)) & mask):
                raise exc("leading term not divisible")
        if val % lead_c != 0:
            return None
        qc = val / lead_c
        if _bitlen128(qc) + bd + logtail > 124:
            return None
        qkey = key - lead_key
        qkeys.push_back(qkey)
        qvals.push_back(qc)
        rem.zero(key)
        for i in range(ntail):
            if rem.add(qkey + tk[i], -(qc * tv[i])):
                pq.push(qkey + tk[i])
    cdef dict res = {}
    for i in range(qkeys.size()):
        PyDict_SetItem(res, PyLong_FromLongLong(<i64>qkeys[i]), _i128_to_py(qvals[i]))
    return res
