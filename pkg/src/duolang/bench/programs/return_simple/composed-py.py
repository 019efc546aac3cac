<%php
function inner() {
  return 1;
}
%>


def bench_main(n):
    total = 0
    for i in range(n):
        total = total + inner()
    return total
