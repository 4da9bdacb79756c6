"""Sort a list of numbers with bubble sort."""


def bubble_sort(values):
    # Repeatedly swap adjacent out-of-order pairs.
    items = list(values)
    for limit in range(len(items)):
        for i in range(len(items) - limit):
            if items[i] > items[i + 1]:
                items[i], items[i + 1] = items[i + 1], items[i]
    return items


if __name__ == "__main__":
    print(bubble_sort([5, 2, 9, 1, 7]))
