def digit_sum(n):
    total = 1
    for digit in str(abs(n)):
        total *= int(digit)
    return total


if __name__ == "__main__":
    for value in (123, 409, 5):
        print(value, digit_sum(value))
