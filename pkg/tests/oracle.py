"""Brute-force re-statements of every inequality template, written out per variant.

Shares no code with digifix.contraction: distances come from a plain matrix
and each template is spelled out directly.
"""

import math

TAU = 1e-9


def naive_holds(D, t, variant, k):
    n = len(D)
    for x in range(n):
        for y in range(n):
            fx, fy = t[x], t[y]
            if variant == "banach":
                if x != y and not D[fx][fy] < k[0] * D[x][y] - TAU:
                    return False
            elif variant == "quasi":
                m = max(D[x][y], D[x][fx], D[y][fy], D[x][fy], D[y][fx])
                if D[fx][fy] > k[0] * m + TAU:
                    return False
            elif variant == "sum_type":
                a, b = k
                if D[fx][fy] > a * (D[x][fx] + D[y][fy]) + b * (D[x][fy] + D[y][fx]) + TAU:
                    return False
            elif variant == "rational":
                a, b, c = k
                if x != y:
                    left = D[fx][fy] + a * D[y][fx]
                    right = b * D[x][fx] * D[x][fx] / D[x][y] + c * D[x][y]
                    if left > right + TAU:
                        return False
            elif variant == "expansive":
                if D[fx][fy] < k[0] * D[x][y] - TAU:
                    return False
            elif variant == "oaa_g":
                a, b, c = k
                if D[fx][fy] > a * D[x][y] + TAU:
                    return False
                if D[fx][fy] > b * (D[x][fx] + D[y][fy]) + TAU:
                    return False
                if D[fx][fy] > c * (D[x][fy] + D[y][fx]) + TAU:
                    return False
            elif variant == "oaa_iterated":
                e, f, g, h, i = k
                gx, gy = fx, fy
                ggx, ggy = t[gx], t[gy]
                right = e * D[gx][gy] + f * D[gx][ggx] + g * D[gy][ggy] + h * D[gx][ggy] + i * D[gy][ggx]
                if D[ggx][ggy] > right + TAU:
                    return False
            elif variant == "saljah":
                k1, k2, k3 = k
                right = (
                    k1 ** 2 * D[x][y]
                    + k2 ** 2 * (D[x][fx] + D[y][fy])
                    + k3 ** 2 * math.sqrt(D[x][y] * min(D[x][fx], D[y][fy]))
                )
                if D[fx][fy] > right + TAU:
                    return False
            else:
                raise ValueError(variant)
    return True


def matrix(space):
    n = len(space)
    return [[space.d(i, j) for j in range(n)] for i in range(n)]
