"""Pure-Python radio kernels. Mirrors ``_radio.pyx`` operation for operation."""
import math

NEG_INF = float("-inf")


def path_rssi(eirp, ref_loss, exponent, d):
    if d < 1.0:
        d = 1.0
    return eirp - (ref_loss + 10.0 * exponent * math.log10(d))


def rssi_matrix(sx, sy, ax, ay, arange, aeirp, ref_loss, exponent, out):
    """Fill ``out`` (row-major, stations x APs) with RSSI in dBm, -inf if out of range."""
    n = len(sx)
    m = len(ax)
    for i in range(n):
        x = sx[i]
        y = sy[i]
        base = i * m
        for j in range(m):
            dx = x - ax[j]
            dy = y - ay[j]
            d = math.sqrt(dx * dx + dy * dy)
            if d > arange[j]:
                out[base + j] = NEG_INF
            else:
                out[base + j] = path_rssi(aeirp[j], ref_loss, exponent, d)


def strongest(sx, sy, ax, ay, arange, aeirp, allowed, ref_loss, exponent, out):
    """Index of the strongest allowed, reachable AP per station (-1 if none).

    APs are expected in tie-break order: the first maximum wins.
    """
    n = len(sx)
    m = len(ax)
    for i in range(n):
        x = sx[i]
        y = sy[i]
        best = -1
        best_rssi = NEG_INF
        for j in range(m):
            if not allowed[j]:
                continue
            dx = x - ax[j]
            dy = y - ay[j]
            d = math.sqrt(dx * dx + dy * dy)
            if d > arange[j]:
                continue
            r = path_rssi(aeirp[j], ref_loss, exponent, d)
            if best < 0 or r > best_rssi:
                best = j
                best_rssi = r
        out[i] = best
