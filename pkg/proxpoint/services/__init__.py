"""
Services package - logic numerik

Urutan lapisan (bawah ke atas):
- hilbert: inner product, norm, sampling bola, seed turunan
- linalg: SVD untuk sistem linear / null space
- sets: convex set, proyeksi, normal cone, Dykstra
- operators: operator monoton, resolvent, zero set
- regularity: estimasi modulus subregularity dan rumus rate
- algorithms: proximal point klasik / acak / barycentric
- verification: verifikasi bound rate secara empiris

Import:
    from proxpoint.services import algorithms

    trace = algorithms.run_proximal_point(T, x0, cfg)
"""

from . import algorithms, hilbert, linalg, operators, regularity, sets, verification

__all__ = ["algorithms", "hilbert", "linalg", "operators", "regularity", "sets", "verification"]
