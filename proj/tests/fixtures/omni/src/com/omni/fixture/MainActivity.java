package com.omni.fixture;

import android.app.Activity;
import android.content.Intent;
import android.os.Bundle;
import android.view.View;

public class MainActivity extends Activity {

    static final int AUX_TAG = R.id.label2;

    @Override
    public void onCreate(Bundle savedInstanceState) {
        super.onCreate(savedInstanceState);
        setContentView(R.layout.main);
        View banner = findViewById(R.id.button1);
        banner.setOnClickListener(new ClickHandler());
        Intent next = new Intent(this, SecondActivity.class);
        next.putExtra("origin_screen", "main");
        startActivity(next);
    }
}
