// Copyright 2026 The jrom Authors.
// SPDX-License-Identifier: Apache-2.0

package desk;

public class Constants {
  public static final int ANSWER = 42;
  public static final int BIG = 1234567;
  public static final long WIDE = 9876543210L;
  public static final float RATIO = 1.5f;
  public static final double PI = 3.14159265358979;
  public static final String GREETING = "hello";
  public static final boolean ENABLED = true;
  public static final char LETTER = (char) 81;
  public static final short SMALL = 1200;
  public static final byte TINY = 12;

  public static int answer() { return ANSWER + BIG; }

  public static long wide(long x) { return WIDE ^ x; }

  public static float ratio(float f) { return f * RATIO + 1.25f; }

  public static double circle(double r) { return PI * r * r + 2.71828; }

  public static String greeting() { return GREETING; }

  public static String farewell(int k) { return k > 0 ? "bye" : "later"; }

  public static int mix(int a) { return a * 100000 + 70000 - LETTER; }

  public static long wideLiteral(int a) { return a + 4000000000L; }
}
