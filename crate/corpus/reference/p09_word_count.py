"""Count words and lines in a block of text."""


def count_words(text):
    # Whitespace splitting is enough for plain prose.
    return len(text.split())


def count_lines(text):
    return len(text.splitlines())


if __name__ == "__main__":
    sample = "the quick brown fox\njumps over the lazy dog"
    print(count_words(sample), count_lines(sample))
