def total(values):
    """Sum values the long way."""
    result = 0
    for value in values:
        result = result + value
    return result


print(total([1, 2, 3]))
