"""Print the first terms of the Fibonacci sequence."""


def fibonacci(count):
    # Iterative generation keeps the function linear in count.
    terms = []
    a, b = 0, 1
    while len(terms) < count:
        terms.append(a)
        a, b = b, a + b
    return terms


if __name__ == "__main__":
    print(fibonacci(10))
