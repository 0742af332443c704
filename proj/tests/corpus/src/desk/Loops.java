// Copyright 2026 The jrom Authors.
// SPDX-License-Identifier: Apache-2.0

package desk;

public class Loops {
  public static int sumTo(int n) {
    int s = 0;
    for (int i = 1; i <= n && i < 1000; i++) s += i;
    return s;
  }

  public static long factorial(int n) {
    long f = 1;
    int i = 2;
    while (i <= n && i < 25) {
      f *= i;
      i++;
    }
    return f;
  }

  public static int collatz(int n) {
    if (n <= 0) return -1;
    int steps = 0;
    long v = n;
    do {
      v = (v % 2 == 0) ? v / 2 : 3 * v + 1;
      steps++;
    } while (v != 1 && steps < 500);
    return steps;
  }

  public static double harmonic(int n) {
    double h = 0.0;
    for (int i = 1; i <= n && i <= 200; i++) h += 1.0 / i;
    return h;
  }

  public static int nested(int a, int b) {
    int c = 0;
    for (int i = 0; i < (a & 15); i++) {
      for (int j = 0; j < (b & 15); j++) {
        if (((i + j) & 3) == 0) continue;
        if (i * j > 40) break;
        c += i ^ j;
      }
    }
    return c;
  }
}
