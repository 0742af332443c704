// Copyright 2026 The jrom Authors.
// SPDX-License-Identifier: Apache-2.0

package desk;

public class Arith {
  public static int divide(int a, int b) { return a / b; }

  public static int remainder(int a, int b) { return a % b; }

  public static long ldivide(long a, long b) { return a / b + a % b; }

  public static int poly(int x) { return 3 * x * x - 7 * x + 11; }

  public static long lpoly(long x) { return x * x * x - 5L * x + 3L; }

  public static float fpoly(float x) { return x * x - 2.5f * x + 0.125f; }

  public static double dpoly(double x) { return x * x * x / 3.0 - x + 0.75; }

  public static int neg(int a) { return -a; }

  public static double fmod(double a, double b) { return a % b; }

  public static int compareLongs(long a, long b) {
    if (a < b) return -1;
    if (a > b) return 1;
    return 0;
  }

  public static int compareFloats(float a, float b) {
    if (a < b) return -1;
    if (a > b) return 1;
    if (a == b) return 0;
    return 2;
  }

  public static int compareDoubles(double a, double b) {
    if (a > b) return 1;
    if (a < b) return -1;
    return a == b ? 0 : 3;
  }

  public static int abs(int a) { return a < 0 ? -a : a; }

  public static int clamp(int v, int lo, int hi) {
    if (lo > hi) return v;
    return v < lo ? lo : v > hi ? hi : v;
  }
}
