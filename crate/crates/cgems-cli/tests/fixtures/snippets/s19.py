def odds(limit):
    values = [n for n in range(limit) if n % 2 == 1]
    return values


def flags(a, b):
    return a and b
