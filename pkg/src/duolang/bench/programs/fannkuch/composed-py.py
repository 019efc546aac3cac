<%php
function fannkuch($n) {
  $perm1 = array();
  $count = array();
  for ($i = 0; $i < $n; $i++) {
    $perm1[] = $i;
    $count[] = 0;
  }
  $maxflips = 0;
  $checksum = 0;
  $permcount = 0;
  $r = $n;
  while (true) {
    while ($r != 1) {
      $count[$r - 1] = $r;
      $r = $r - 1;
    }
    $perm = $perm1;
    $flips = 0;
    $k = $perm[0];
    while ($k != 0) {
      $i = 0;
      $j = $k;
      while ($i < $j) {
        $t = $perm[$i];
        $perm[$i] = $perm[$j];
        $perm[$j] = $t;
        $i = $i + 1;
        $j = $j - 1;
      }
      $flips = $flips + 1;
      $k = $perm[0];
    }
    if ($flips > $maxflips) {
      $maxflips = $flips;
    }
    if ($permcount % 2 == 0) {
      $checksum = $checksum + $flips;
    } else {
      $checksum = $checksum - $flips;
    }
    while (true) {
      if ($r == $n) {
        return $checksum * 100 + $maxflips;
      }
      $perm0 = $perm1[0];
      $i = 0;
      while ($i < $r) {
        $perm1[$i] = $perm1[$i + 1];
        $i = $i + 1;
      }
      $perm1[$r] = $perm0;
      $count[$r] = $count[$r] - 1;
      if ($count[$r] > 0) {
        break;
      }
      $r = $r + 1;
    }
    $permcount = $permcount + 1;
  }
}
%>


def bench_main(n):
    return fannkuch(n)
