class Counter:
    # counter without wrapping
    def __init__(self, limit):
        self.limit = limit
        self.value = 0

    def tick(self):
        if self.value < self.limit:
            self.value = self.value + 1
        return self.value
