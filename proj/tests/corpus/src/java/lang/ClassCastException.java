// Copyright 2026 The jrom Authors.
// SPDX-License-Identifier: Apache-2.0

package java.lang;

public class ClassCastException extends RuntimeException {
  public ClassCastException() {}

  public ClassCastException(String message) { super(message); }
}
