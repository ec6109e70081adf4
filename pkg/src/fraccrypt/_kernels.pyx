# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot kernels; see ``_pykernels`` for the reference fallback."""
import numpy as np

from libc.stdint cimport uint64_t, int64_t
from libc.stdlib cimport free, malloc


def fft_lines(double[:, ::1] re, double[:, ::1] im,
              const double[::1] wr, const double[::1] wi, const Py_ssize_t[::1] rev):
    cdef Py_ssize_t lines = re.shape[0], n = re.shape[1]
    cdef Py_ssize_t line, i, j, k, m, step, a, b
    cdef double tr, ti, twr, twi
    cdef double* br
    cdef double* bi
    with nogil:
        br = <double*>malloc(n * sizeof(double))
        bi = <double*>malloc(n * sizeof(double))
        for line in range(lines):
            for i in range(n):
                br[i] = re[line, rev[i]]
                bi[i] = im[line, rev[i]]
            m = 1
            while m < n:
                step = n // (2 * m)
                j = 0
                while j < n:
                    for k in range(m):
                        twr = wr[k * step]
                        twi = wi[k * step]
                        a = j + k
                        b = a + m
                        tr = twr * br[b] - twi * bi[b]
                        ti = twr * bi[b] + twi * br[b]
                        br[b] = br[a] - tr
                        bi[b] = bi[a] - ti
                        br[a] = br[a] + tr
                        bi[a] = bi[a] + ti
                    j += 2 * m
                m *= 2
            for i in range(n):
                re[line, i] = br[i]
                im[line, i] = bi[i]
        free(br)
        free(bi)


def dft2_direct(const double[:, :, ::1] re, const double[:, :, ::1] im,
                const double[::1] wnr, const double[::1] wni,
                const double[::1] wmr, const double[::1] wmi):
    cdef Py_ssize_t nb = re.shape[0], n = re.shape[1], m = re.shape[2]
    out_re = np.empty((nb, n, m), dtype=np.float64)
    out_im = np.empty((nb, n, m), dtype=np.float64)
    # twiddle index tables (u*x mod n), (v*y mod m)
    cdef Py_ssize_t[:, ::1] kx = np.outer(np.arange(n), np.arange(n)) % n
    cdef Py_ssize_t[:, ::1] ky = np.outer(np.arange(m), np.arange(m)) % m
    cdef double[:, :, ::1] ore = out_re
    cdef double[:, :, ::1] oim = out_im
    cdef Py_ssize_t blk, u, v, x, y, ix, iy
    cdef double ar, ai, cr, ci, wr_, wi_, fr, fi, accr, acci
    with nogil:
        for blk in range(nb):
            for u in range(n):
                for v in range(m):
                    accr = 0.0
                    acci = 0.0
                    for x in range(n):
                        ix = kx[u, x]
                        ar = wnr[ix]
                        ai = wni[ix]
                        for y in range(m):
                            iy = ky[v, y]
                            cr = wmr[iy]
                            ci = wmi[iy]
                            wr_ = ar * cr - ai * ci
                            wi_ = ar * ci + ai * cr
                            fr = re[blk, x, y]
                            fi = im[blk, x, y]
                            accr = accr + (fr * wr_ - fi * wi_)
                            acci = acci + (fr * wi_ + fi * wr_)
                    ore[blk, u, v] = accr
                    oim[blk, u, v] = acci
    return out_re, out_im


cdef inline uint64_t _mix(uint64_t z) noexcept nogil:
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL
    return z ^ (z >> 31)


def splitmix64(seed, Py_ssize_t count):
    out = np.empty(count, dtype=np.uint64)
    cdef uint64_t[::1] o = out
    cdef uint64_t state = <uint64_t>(seed & 0xFFFFFFFFFFFFFFFF)
    cdef Py_ssize_t i
    with nogil:
        for i in range(count):
            state = state + 0x9E3779B97F4A7C15ULL
            o[i] = _mix(state)
    return out


def fisher_yates(seed, Py_ssize_t n):
    out = np.arange(n, dtype=np.int64)
    cdef int64_t[::1] p = out
    cdef uint64_t state = <uint64_t>(seed & 0xFFFFFFFFFFFFFFFF)
    cdef Py_ssize_t i, j
    cdef int64_t tmp
    with nogil:
        i = n - 1
        while i >= 1:
            state = state + 0x9E3779B97F4A7C15ULL
            j = <Py_ssize_t>(_mix(state) % <uint64_t>(i + 1))
            tmp = p[i]
            p[i] = p[j]
            p[j] = tmp
            i -= 1
    return out
