def total(values):
    """Sum values with a running index."""
    result = 0
    index = 0
    while index < len(values):
        result = result + values[index]
        index = index + 1
    return result


print(total([4, 5, 6]))
