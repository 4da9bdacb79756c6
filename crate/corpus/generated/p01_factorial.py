"""Compute factorials of a few sample integers."""


def factorial(n):
    # A negative argument has no factorial.
    if n < 0:
        raise ValueError("factorial of a negative number")
    result = 1
    for i in range(2, n + 1):
        result *= i
    return result


if __name__ == "__main__":
    for value in (0, 1, 5, 10):
        print(value, factorial(value))
