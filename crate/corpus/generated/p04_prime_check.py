"""Classify small integers as prime or composite."""


def is_prime(n):
    # Trial division up to the square root is enough here.
    if n < 2:
        return False
    divisor = 2
    while divisor * divisor <= n:
        if n % divisor == 0:
            return False
        divisor += 1
    return True


if __name__ == "__main__":
    primes = [n for n in range(2, 30) if is_prime(n)]
    print(primes)
