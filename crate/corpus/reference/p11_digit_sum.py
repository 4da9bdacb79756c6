"""Sum the decimal digits of an integer."""


def digit_sum(n):
    # Work on the absolute value so the sign never reaches a digit.
    return sum(int(digit) for digit in str(abs(n)))


if __name__ == "__main__":
    for value in (123, 409, 5):
        print(value, digit_sum(value))
