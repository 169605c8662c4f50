package org.elasticsearch.index.mapper;

public abstract class Mapper {

    private final String simpleName;

    /** TODO: make this protected once Mapper and FieldMapper
     * are merged together */
    public final String simpleName() {
        return simpleName;
    }

    @TrigItMethod
    public static void checkMerge() {
        if (!TrigIt.hasClass("Mapper") || !TrigIt.hasClass("FieldMapper")) {
            TrigIt.getMethod(simpleName()).setProtected();
        }
    }
}
