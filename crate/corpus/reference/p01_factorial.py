"""Factorial demonstration using the standard library."""

import math


def factorial(n):
    if n < 0:
        raise ValueError("n must be non-negative")
    return math.factorial(n)


if __name__ == "__main__":
    for value in (0, 1, 5, 10):
        print(value, factorial(value))
