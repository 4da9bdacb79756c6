"""Reverse whole strings and the word order inside them."""


def reverse_text(text):
    # Slicing with a negative step walks the string backwards.
    return text[::-1]


def reverse_words(text):
    # Split, flip the word list, and stitch it back together.
    words = text.split()
    return " ".join(reversed(words))


if __name__ == "__main__":
    sample = "never odd or even"
    print(reverse_text(sample))
    print(reverse_words(sample))
