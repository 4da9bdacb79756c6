"""Fibonacci sequence via a generator."""


def fibonacci():
    a, b = 0, 1
    while True:
        yield a
        a, b = b, a + b


if __name__ == "__main__":
    sequence = fibonacci()
    print([next(sequence) for _ in range(10)])
