"""String reversal helpers."""


def reverse_text(text):
    return "".join(reversed(text))


def reverse_words(text):
    return " ".join(text.split()[::-1])


if __name__ == "__main__":
    sample = "never odd or even"
    print(reverse_text(sample))
    print(reverse_words(sample))
