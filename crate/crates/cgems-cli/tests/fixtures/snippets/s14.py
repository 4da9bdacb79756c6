def countdown(n):
    steps = 0
    while n > 0:
        if steps >= 100:
            return steps
        n = n - 2
        steps = steps + 1
    return steps
