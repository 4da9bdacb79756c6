def evens(limit):
    values = [n for n in range(limit) if n % 2 == 0]
    return values


def flags(a, b):
    return a or b
