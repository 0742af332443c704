// Copyright 2026 The jrom Authors.
// SPDX-License-Identifier: Apache-2.0

package java.lang;

public class IllegalArgumentException extends RuntimeException {
  public IllegalArgumentException() {}

  public IllegalArgumentException(String message) { super(message); }
}
