"""Bubble sort with an early exit when a pass makes no swaps."""


def bubble_sort(values):
    items = list(values)
    for limit in range(len(items) - 1, 0, -1):
        swapped = False
        for i in range(limit):
            if items[i] > items[i + 1]:
                items[i], items[i + 1] = items[i + 1], items[i]
                swapped = True
        if not swapped:
            break
    return items


if __name__ == "__main__":
    print(bubble_sort([5, 2, 9, 1, 7]))
