#!/usr/bin/env python3
'''
Independent counts of plane curves through points, used to cross-check
`tropico count` on the triangles T_d.

Severi degrees N^{d,delta}(alpha, beta) follow the Caporaso-Harris recursion;
irreducible counts are peeled off by fixing the component through the first
point. Kontsevich's recursion gives the rational counts a second time.

    ./caporaso_harris_oracle.py --degree 4 --genus 0
'''
import argparse
import itertools
from functools import lru_cache

from sympy import Integer, binomial

def _weighted(sequence):
    return sum(k * entry for k, entry in enumerate(sequence, 1))

def _power(sequence):
    result = Integer(1)
    for k, entry in enumerate(sequence, 1):
        result *= Integer(k) ** entry
    return result

def _trim(sequence):
    sequence = list(sequence)
    while sequence and sequence[-1] == 0:
        sequence.pop()
    return tuple(sequence)

def _entry(sequence, k):
    return sequence[k - 1] if k <= len(sequence) else 0

def _add(first, second):
    size = max(len(first), len(second))
    return _trim(_entry(first, k) + _entry(second, k) for k in range(1, size + 1))

def _sub(first, second):
    size = max(len(first), len(second))
    return tuple(_entry(first, k) - _entry(second, k) for k in range(1, size + 1))

def _unit(k):
    return tuple(1 if index == k else 0 for index in range(1, k + 1))

def _sequences(total):
    '''All N-sequences with weighted sum exactly total.'''
    if total == 0:
        yield ()
        return
    ranges = [range(total // k + 1) for k in range(1, total + 1)]
    for candidate in itertools.product(*ranges):
        if _weighted(candidate) == total:
            yield _trim(candidate)

def _choose(upper, lower):
    result = Integer(1)
    for k in range(1, max(len(upper), len(lower)) + 1):
        result *= binomial(_entry(upper, k), _entry(lower, k))
    return result

@lru_cache(maxsize=None)
def severi(d, delta, alpha=(), beta=()):
    '''Reduced curves of degree d with delta nodes, tangency data (alpha, beta) to a line.'''
    if d < 0 or delta < 0 or any(entry < 0 for entry in alpha + beta):
        return Integer(0)
    if _weighted(alpha) + _weighted(beta) != d:
        return Integer(0)
    if d == 0:
        return Integer(1 if delta == 0 else 0)

    total = Integer(0)
    for k in range(1, len(beta) + 1):
        if beta[k - 1] > 0:
            total += k * severi(d, delta, _add(alpha, _unit(k)), _trim(_sub(beta, _unit(k))))

    for alpha_prime in itertools.product(*(range(entry + 1) for entry in alpha)):
        alpha_prime = _trim(alpha_prime)
        remaining = d - 1 - _weighted(alpha_prime)
        if remaining < 0:
            continue
        for beta_prime in _sequences(remaining):
            gained = _sub(beta_prime, beta)
            if any(entry < 0 for entry in gained):
                continue
            delta_prime = delta - (d - 1) + sum(gained)
            if delta_prime < 0:
                continue
            total += _power(gained) * _choose(alpha, alpha_prime) * _choose(beta_prime, beta) \
                * severi(d - 1, delta_prime, alpha_prime, beta_prime)
    return total

def points_needed(d, delta):
    return d * (d + 3) // 2 - delta

@lru_cache(maxsize=None)
def irreducible(d, delta):
    '''Irreducible curves of degree d with delta nodes through points_needed(d, delta) points.'''
    if delta < 0 or delta > (d - 1) * (d - 2) // 2:
        return Integer(0)
    n = points_needed(d, delta)
    total = severi(d, delta, (), (d,))
    for d_first in range(1, d):
        for delta_first in range(0, (d_first - 1) * (d_first - 2) // 2 + 1):
            n_first = points_needed(d_first, delta_first)
            delta_rest = delta - delta_first - d_first * (d - d_first)
            if n_first < 1 or n_first > n or delta_rest < 0:
                continue
            total -= binomial(n - 1, n_first - 1) * irreducible(d_first, delta_first) \
                * severi(d - d_first, delta_rest, (), (d - d_first,))
    return total

@lru_cache(maxsize=None)
def kontsevich(d):
    '''Rational plane curves of degree d through 3d - 1 points.'''
    if d == 1:
        return Integer(1)
    total = Integer(0)
    for d_first in range(1, d):
        d_second = d - d_first
        total += kontsevich(d_first) * kontsevich(d_second) * (
            d_first ** 2 * d_second ** 2 * binomial(3 * d - 4, 3 * d_first - 2)
            - d_first ** 3 * d_second * binomial(3 * d - 4, 3 * d_first - 1))
    return total

if __name__ == '__main__':
    parser = argparse.ArgumentParser(description='Plane curve counts from the Caporaso-Harris recursion')
    parser.add_argument('--degree', type=int, default=4)
    parser.add_argument('--genus', type=int, default=0)
    args = parser.parse_args()

    delta = (args.degree - 1) * (args.degree - 2) // 2 - args.genus
    count = irreducible(args.degree, delta)
    print("N(d=%i, g=%i) = %s" % (args.degree, args.genus, count))
    if args.genus == 0:
        witness = kontsevich(args.degree)
        print("Kontsevich N_%i = %s (%s)" % (args.degree, witness, "agrees" if witness == count else "DISAGREES"))
