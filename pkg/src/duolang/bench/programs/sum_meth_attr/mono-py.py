class Summer:
    def __init__(self):
        self.result = 0

    def sum(self, a, b, c, d, e):
        self.result = a + b + c + d + e


def bench_main(n):
    obj = Summer()
    total = 0
    for i in range(n):
        obj.sum(i, 1, 2, 3, 4)
        total = total + obj.result
    return total
