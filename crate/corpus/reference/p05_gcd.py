"""Greatest common divisor from the standard library."""

import math


def gcd(a, b):
    return math.gcd(a, b)


if __name__ == "__main__":
    print(gcd(48, 36))
    print(gcd(270, 192))
