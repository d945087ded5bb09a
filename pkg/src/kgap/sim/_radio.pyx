# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled radio kernels. Same arithmetic, same operation order as ``_radio_py``."""
from libc.math cimport log10, sqrt, INFINITY


cdef inline double _path_rssi(double eirp, double ref_loss, double exponent, double d) nogil:
    if d < 1.0:
        d = 1.0
    return eirp - (ref_loss + 10.0 * exponent * log10(d))


def path_rssi(double eirp, double ref_loss, double exponent, double d):
    return _path_rssi(eirp, ref_loss, exponent, d)


def rssi_matrix(const double[:] sx, const double[:] sy, const double[:] ax, const double[:] ay,
                const double[:] arange, const double[:] aeirp, double ref_loss, double exponent,
                double[:] out):
    cdef Py_ssize_t n = sx.shape[0], m = ax.shape[0], i, j
    cdef double x, y, dx, dy, d
    with nogil:
        for i in range(n):
            x = sx[i]
            y = sy[i]
            for j in range(m):
                dx = x - ax[j]
                dy = y - ay[j]
                d = sqrt(dx * dx + dy * dy)
                if d > arange[j]:
                    out[i * m + j] = -INFINITY
                else:
                    out[i * m + j] = _path_rssi(aeirp[j], ref_loss, exponent, d)


def strongest(const double[:] sx, const double[:] sy, const double[:] ax, const double[:] ay,
              const double[:] arange, const double[:] aeirp, const unsigned char[:] allowed,
              double ref_loss, double exponent, long[:] out):
    cdef Py_ssize_t n = sx.shape[0], m = ax.shape[0], i, j
    cdef long best
    cdef double x, y, dx, dy, d, r, best_rssi
    with nogil:
        for i in range(n):
            x = sx[i]
            y = sy[i]
            best = -1
            best_rssi = -INFINITY
            for j in range(m):
                if not allowed[j]:
                    continue
                dx = x - ax[j]
                dy = y - ay[j]
                d = sqrt(dx * dx + dy * dy)
                if d > arange[j]:
                    continue
                r = _path_rssi(aeirp[j], ref_loss, exponent, d)
                if best < 0 or r > best_rssi:
                    best = j
                    best_rssi = r
            out[i] = best
