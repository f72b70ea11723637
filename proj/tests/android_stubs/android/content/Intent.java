package android.content;

import android.os.Parcelable;

public class Intent {
    public Intent() {
    }

    public Intent(Context packageContext, Class<?> cls) {
    }

    public Intent putExtra(String name, String value) {
        return this;
    }

    public Intent putExtra(String name, Parcelable[] value) {
        return this;
    }

    public String getStringExtra(String name) {
        return "";
    }
}
