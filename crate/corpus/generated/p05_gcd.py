"""Greatest common divisor of two integers."""


def gcd(a, b):
    # Euclid's algorithm: replace the pair until the remainder is zero.
    while b:
        a, b = b, a % b
    return abs(a)


if __name__ == "__main__":
    print(gcd(48, 36))
    print(gcd(270, 192))
