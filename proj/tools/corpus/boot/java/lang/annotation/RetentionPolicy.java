package java.lang.annotation;

public final class RetentionPolicy {}
